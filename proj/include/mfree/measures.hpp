#pragma once

// The discrete limit measures of the hierarchy: the central-limit laws mu^(m)
// (atoms at Chebyshev cosines, converging to the semicircle) and the Poisson
// laws mu^(m)_lambda (converging to the free Poisson / Marchenko-Pastur law).
// Closed trigonometric forms are the primary constructors; an independent
// numeric partial-fraction path over the Cauchy transforms cross-validates.

#include "mfree/cauchy.hpp"
#include "mfree/errors.hpp"
#include "mfree/numeric.hpp"
#include "mfree/partitions.hpp"
#include "mfree/ratfun.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfree {

struct DiscreteMeasure {
    std::vector<double> atoms;   // strictly increasing
    std::vector<double> weights; // positive, summing to 1

    // Checks the probability-measure invariants within floating tolerance.
    void validate(double tol = 1e-12) const {
        if (atoms.size() != weights.size())
            throw std::invalid_argument("DiscreteMeasure: atoms/weights length mismatch");
        double sum = 0.0;
        for (size_t i = 0; i < atoms.size(); ++i) {
            if (i > 0 && !(atoms[i] > atoms[i - 1]))
                throw std::invalid_argument("DiscreteMeasure: atoms not strictly increasing");
            if (!(weights[i] > -1e-13))
                throw std::invalid_argument("DiscreteMeasure: negative weight");
            sum += weights[i];
        }
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("DiscreteMeasure: weights do not sum to 1");
    }
};

// n-th moment: sum_k w_k a_k^n, accumulated in extended precision so the
// result carries only the atoms' own storage rounding.
inline double moment(const DiscreteMeasure& d, int n) {
    if (n < 0) throw std::invalid_argument("moment: negative order");
    long double s = 0.0L;
    for (size_t k = 0; k < d.atoms.size(); ++k)
        s += static_cast<long double>(d.weights[k]) * std::pow(static_cast<long double>(d.atoms[k]), n);
    return static_cast<double>(s);
}

// Central-limit law at depth m: m+1 atoms
//   z_{m,k} = 2 cos(k pi / (m+2)),  weight 2 sin^2(k pi / (m+2)) / (m+2),
// k = 1..m+1.  m = 0 gives the point mass at 0; m -> infinity approaches the
// standard semicircle.
inline DiscreteMeasure clt_measure(int m) {
    if (m < 0) throw std::invalid_argument("clt_measure: negative m");
    DiscreteMeasure d;
    // Construct in extended precision, round once on storage: n-th powers of
    // the atoms amplify atom rounding n-fold, so every spare bit counts.
    const long double pi = std::acos(-1.0L);
    // k descending makes the atoms increasing
    for (int k = m + 1; k >= 1; --k) {
        long double theta = k * pi / (m + 2);
        d.atoms.push_back(static_cast<double>(2.0L * std::cos(theta)));
        long double s = std::sin(theta);
        d.weights.push_back(static_cast<double>(2.0L * s * s / (m + 2)));
    }
    d.validate();
    return d;
}

// Poisson law at depth m and rate lambda > 0: atom 0 with weight
//   sqrt(lambda) U_{m+1}(c) / U_m(c) - lambda,   c = (lambda+1) / (2 sqrt(lambda)),
// plus atoms y_k = 2 sqrt(lambda) cos(k pi/(m+1)) + lambda + 1 with weights
//   2 lambda sin^2(k pi/(m+1)) / ((m+1) y_k),    k = 1..m.
// m = 0 gives the point mass at 0.  Atoms whose weight falls below the
// underflow threshold 1e-15 are dropped only when the caller supplies
// `dropped` to receive their indices; by default everything is kept.
inline DiscreteMeasure poisson_measure(int m, double lambda, std::vector<int>* dropped = nullptr) {
    if (m < 0) throw std::invalid_argument("poisson_measure: negative m");
    if (!(lambda > 0)) throw std::domain_error("poisson_measure: lambda must be positive");
    DiscreteMeasure d;
    if (m == 0) {
        d.atoms = {0.0};
        d.weights = {1.0};
        return d;
    }
    // Extended-precision construction, rounded once on storage (see clt_measure).
    const long double pi = std::acos(-1.0L);
    const long double lam = lambda;
    const long double s = std::sqrt(lam);
    const long double c = (lam + 1) / (2 * s);
    double a0 = static_cast<double>(
        s * detail::chebyshev_u_value_ld(m + 1, c) / detail::chebyshev_u_value_ld(m, c) - lam);
    if (a0 < -1e-13) throw std::logic_error("poisson_measure: negative weight at atom 0");
    d.atoms.push_back(0.0);
    d.weights.push_back(a0);
    for (int k = m; k >= 1; --k) { // descending k = ascending atoms
        long double theta = k * pi / (m + 1);
        long double y = 2 * s * std::cos(theta) + lam + 1;
        long double si = std::sin(theta);
        d.atoms.push_back(static_cast<double>(y));
        d.weights.push_back(static_cast<double>(2 * lam * si * si / ((m + 1) * y)));
    }
    if (dropped) {
        DiscreteMeasure kept;
        for (size_t i = 0; i < d.atoms.size(); ++i) {
            if (d.weights[i] < 1e-15)
                dropped->push_back(static_cast<int>(i));
            else {
                kept.atoms.push_back(d.atoms[i]);
                kept.weights.push_back(d.weights[i]);
            }
        }
        d = std::move(kept);
    }
    d.validate(1e-9); // trig + Chebyshev-ratio rounding; constructor-level identities are tested tighter
    return d;
}

// Even moments of the semicircle law (the m -> infinity limit of mu^(m)):
// Catalan numbers; odd moments vanish.
inline integer wigner_moment(int n) {
    if (n < 0) throw std::invalid_argument("wigner_moment: negative order");
    if (n % 2 != 0) return 0;
    return catalan_number(static_cast<unsigned>(n / 2));
}

// Moments of the free Poisson law: sum_b lambda^b |NC_n(b)| (all non-crossing
// partitions, no depth bound).
inline rational free_poisson_moment(int n, const rational& lambda) {
    if (n < 0) throw std::invalid_argument("free_poisson_moment: negative order");
    if (n == 0) return 1;
    rational s = 0;
    rational pw = 1;
    for (int b = 1; b <= n; ++b) {
        pw *= lambda;
        s += pw * rational(count_nc(n, b, n));
    }
    return s;
}

// ---- partial fractions ------------------------------------------------------

// Decomposes a proper rational function with simple real poles as
// sum_k w_k / (z - a_k) and returns atoms a_k with weights w_k (residues).
// Root finding: sign-change bracketing on a uniform grid inside the Cauchy
// bound, bisection, then a few derivative steps.  Throws decomposition_error
// if the expected number of simple real roots cannot be located.
inline DiscreteMeasure partial_fractions(const RatQ& r) {
    RatQ rr = reduce(r);
    if (!rr.is_proper()) throw std::domain_error("partial_fractions: rational function is not proper");
    const int D = rr.den().degree();
    if (D < 1) throw std::domain_error("partial_fractions: constant denominator");
    Polynomial<double> den = to_double_poly(rr.den()); // monic after reduce
    Polynomial<double> num = to_double_poly(rr.num());
    Polynomial<double> dden = den.derivative();

    double bound = 1.0;
    for (int i = 0; i < D; ++i) bound = std::max(bound, std::abs(den.coeff(i)));
    bound += 1.0; // Cauchy bound for a monic polynomial

    const int grid = 8192;
    std::vector<double> roots;
    double prev_x = -bound, prev_f = den.eval(prev_x);
    for (int i = 1; i <= grid && static_cast<int>(roots.size()) < D; ++i) {
        double x = -bound + 2 * bound * i / grid;
        double f = den.eval(x);
        if (prev_f == 0.0) {
            roots.push_back(prev_x);
        } else if (f != 0.0 && ((prev_f < 0) != (f < 0))) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = den.eval(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((flo < 0) != (fm < 0))
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            double root = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) { // polish
                double dfr = dden.eval(root);
                if (dfr == 0.0) break;
                root -= den.eval(root) / dfr;
            }
            roots.push_back(root);
        }
        prev_x = x;
        prev_f = f;
    }
    if (prev_f == 0.0 && static_cast<int>(roots.size()) < D) roots.push_back(prev_x);

    if (static_cast<int>(roots.size()) != D)
        throw decomposition_error("partial_fractions: denominator does not split into simple real roots (found " +
                                  std::to_string(roots.size()) + " of " + std::to_string(D) + ")");
    for (size_t i = 1; i < roots.size(); ++i)
        if (roots[i] - roots[i - 1] < 1e-9 * bound)
            throw decomposition_error("partial_fractions: repeated root detected");

    DiscreteMeasure d;
    for (double root : roots) {
        double dfr = dden.eval(root);
        if (std::abs(dfr) < 1e-12)
            throw decomposition_error("partial_fractions: nearly repeated root (derivative vanishes)");
        d.atoms.push_back(root);
        d.weights.push_back(num.eval(root) / dfr);
    }
    return d;
}

// ---- serialization ----------------------------------------------------------

// Shortest double representation that survives a round trip (17 significant digits).
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// The measure interchange record: {"family", "m", "lambda"?, "atoms", "weights"},
// keys in fixed order, floats with 17 significant digits; byte-deterministic.
inline std::string measure_json(const std::string& family, int m, std::optional<double> lambda,
                                const DiscreteMeasure& d) {
    std::ostringstream os;
    os << "{\"family\":\"" << family << "\",\"m\":" << m;
    if (lambda) os << ",\"lambda\":" << format_double(*lambda);
    os << ",\"atoms\":[";
    for (size_t i = 0; i < d.atoms.size(); ++i) os << (i ? "," : "") << format_double(d.atoms[i]);
    os << "],\"weights\":[";
    for (size_t i = 0; i < d.weights.size(); ++i) os << (i ? "," : "") << format_double(d.weights[i]);
    os << "]}";
    return os.str();
}

} // namespace mfree
