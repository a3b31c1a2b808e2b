#pragma once

// The two hierarchies of moment generating functions, built by exact
// recurrences on rational functions:
//   G_0 = 1/z,        G_m = 1 / (z - G_{m-1})            (central limit family)
//   H^(0) = 1/z,      H^(m) = (1 - H^(m-1)) / (z - z H^(m-1) - lambda)
// The Poisson family is carried as the coupled pair (P, Q) with H = P/Q,
//   P_0 = 1, Q_0 = z, P_m = Q_{m-1} - P_{m-1}, Q_m = (z - lambda) Q_{m-1} - z P_{m-1},
// which keeps every coefficient inside Q[lambda] (no square roots).
// Moments fall out of the Laurent expansion at infinity; the Chebyshev
// closed forms are verified exactly (univariate) and numerically (bivariate).

#include "mfree/numeric.hpp"
#include "mfree/polynomial.hpp"
#include "mfree/ratfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfree {

// Chebyshev polynomial of the second kind, exact coefficients:
// U_0 = 1, U_1 = 2x, U_{m+1} = 2x U_m - U_{m-1}.
inline PolyQ chebyshev_U(int m) {
    if (m < 0) throw std::invalid_argument("chebyshev_U: negative index");
    PolyQ prev(1);
    if (m == 0) return prev;
    PolyQ twox(std::vector<rational>{0, 2});
    PolyQ cur = twox;
    for (int i = 1; i < m; ++i) {
        PolyQ next = twox * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

// U_m at an extended-precision argument, by the same recurrence.
inline long double chebyshev_u_value_ld(int m, long double x) {
    if (m < 0) throw std::invalid_argument("chebyshev_u_value: negative index");
    long double prev = 1.0L, cur = 2.0L * x;
    if (m == 0) return prev;
    for (int i = 1; i < m; ++i) {
        long double next = 2.0L * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace detail

// U_m evaluated numerically (extended precision inside, double out).
inline double chebyshev_u_value(int m, double x) {
    return static_cast<double>(detail::chebyshev_u_value_ld(m, x));
}

struct CauchyHierarchy {
    std::vector<RatQ> transforms; // index m = 0..m_max
    int m_max() const { return static_cast<int>(transforms.size()) - 1; }
};

struct PoissonHierarchy {
    // transforms[m].num() = P_m, transforms[m].den() = Q_m (already coprime,
    // with Q_m monic in z, so the pair is canonical as constructed).
    std::vector<RatB> transforms;
    int m_max() const { return static_cast<int>(transforms.size()) - 1; }
};

inline CauchyHierarchy build_clt_hierarchy(int m_max) {
    if (m_max < 0) throw std::invalid_argument("build_clt_hierarchy: negative m_max");
    CauchyHierarchy h;
    h.transforms.reserve(static_cast<size_t>(m_max) + 1);
    PolyQ z = PolyQ::monomial(1, 1);
    h.transforms.emplace_back(PolyQ(1), z); // G_0 = 1/z
    for (int m = 1; m <= m_max; ++m) {
        const RatQ& g = h.transforms.back();
        h.transforms.push_back(reduce(RatQ(g.den(), z * g.den() - g.num())));
    }
    return h;
}

inline PoissonHierarchy build_poisson_hierarchy(int m_max) {
    if (m_max < 0) throw std::invalid_argument("build_poisson_hierarchy: negative m_max");
    PoissonHierarchy h;
    h.transforms.reserve(static_cast<size_t>(m_max) + 1);
    PolyL lambda = PolyL::monomial(1, 1);
    PolyB z = PolyB::monomial(PolyL(1), 1);
    PolyB z_minus_lambda = z - PolyB(lambda);
    h.transforms.emplace_back(PolyB(PolyL(1)), z); // H^(0) = 1/z
    for (int m = 1; m <= m_max; ++m) {
        const PolyB& p = h.transforms.back().num();
        const PolyB& q = h.transforms.back().den();
        h.transforms.emplace_back(q - p, z_minus_lambda * q - z * p);
    }
    return h;
}

// Moments of the m-th central-limit transform: exact integers, the z^{-n-1}
// Laurent coefficients of G_m.  These count non-crossing pair partitions of
// depth <= m, so they match count_nc_pair(n, m).
inline std::vector<integer> clt_moments(const CauchyHierarchy& h, int m, int n_max) {
    if (m < 0 || m > h.m_max()) throw std::invalid_argument("clt_moments: m out of range");
    auto s = series_at_infinity(h.transforms[static_cast<size_t>(m)], n_max);
    std::vector<integer> out;
    out.reserve(s.coeffs.size());
    for (const auto& c : s.coeffs) {
        if (denominator(c) != 1) throw std::logic_error("clt_moments: non-integer moment");
        out.push_back(numerator(c));
    }
    return out;
}

// Moments of H^(m) as polynomials in lambda; the lambda^b coefficient of the
// n-th entry counts non-crossing partitions of {1..n} with b blocks and depth
// <= m, so it matches count_nc(n, b, m).
inline std::vector<PolyL> poisson_moment_polynomials(const PoissonHierarchy& h, int m, int n_max) {
    if (m < 0 || m > h.m_max()) throw std::invalid_argument("poisson_moment_polynomials: m out of range");
    auto s = series_at_infinity(h.transforms[static_cast<size_t>(m)], n_max);
    return s.coeffs;
}

inline std::vector<rational> poisson_moments(const PoissonHierarchy& h, int m,
                                             const rational& lambda, int n_max) {
    auto polys = poisson_moment_polynomials(h, m, n_max);
    std::vector<rational> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(p.eval(lambda));
    return out;
}

// ---- closed-form verification ----------------------------------------------

struct ClosedFormReport {
    struct Entry {
        int m = 0;
        bool univariate_ok = false;   // G_m == U_m(z/2) / U_{m+1}(z/2), exact
        bool bivariate_ok = true;     // (P_m, Q_m) vs Chebyshev forms at sampled lambda
        double bivariate_deviation = 0.0;
    };
    std::vector<Entry> entries;
    std::vector<double> lambdas_sampled;
    bool all_ok = true;
};

namespace detail {

// Coefficient-wise comparison with absolute/relative mixed tolerance.
inline double poly_deviation(const PolyQ& exact, const Polynomial<double>& approx) {
    double worst = 0.0;
    int deg = std::max(exact.degree(), approx.degree());
    for (int i = 0; i <= deg; ++i) {
        double e = to_double(exact.coeff(i));
        double a = approx.coeff(i);
        double scale = std::max(1.0, std::abs(a));
        worst = std::max(worst, std::abs(e - a) / scale);
    }
    return worst;
}

} // namespace detail

// Checks, for every m <= m_max, the exact identity
//     G_m(z) = U_m(z/2) / U_{m+1}(z/2)
// and, for every m <= bivariate_m_max and each sampled lambda, the numeric
// identities (through sqrt(lambda), which is why these are not exact)
//     P_m(z) = lambda^{m/2} (z - lambda) U_m(w) - lambda^{(m+1)/2} U_{m+1}(w)
//     Q_m(z) = lambda^{m/2} z U_m(w),        w = (z - lambda - 1) / (2 sqrt(lambda)).
inline ClosedFormReport verify_closed_forms(int m_max, int bivariate_m_max = 6,
                                            const std::vector<rational>& lambdas = {rational(1, 2), rational(1), rational(2)},
                                            double tol = 1e-12) {
    if (m_max < 0) throw std::invalid_argument("verify_closed_forms: negative m_max");
    ClosedFormReport rep;
    for (const auto& l : lambdas) rep.lambdas_sampled.push_back(to_double(l));

    CauchyHierarchy g = build_clt_hierarchy(m_max);
    PoissonHierarchy pq = build_poisson_hierarchy(std::max(0, bivariate_m_max));
    PolyQ half_z(std::vector<rational>{0, rational(1, 2)});

    for (int m = 0; m <= m_max; ++m) {
        ClosedFormReport::Entry e;
        e.m = m;
        RatQ w(chebyshev_U(m).compose(half_z), chebyshev_U(m + 1).compose(half_z));
        e.univariate_ok = reduce(w) == g.transforms[static_cast<size_t>(m)];

        if (m <= bivariate_m_max) {
            for (const auto& lq : lambdas) {
                double lam = to_double(lq);
                if (lam <= 0) throw std::invalid_argument("verify_closed_forms: lambda must be positive");
                double s = std::sqrt(lam);
                // w(z) as a linear double polynomial
                Polynomial<double> w_of_z(std::vector<double>{-(lam + 1) / (2 * s), 1 / (2 * s)});
                Polynomial<double> um = to_double_poly(chebyshev_U(m)).compose(w_of_z);
                Polynomial<double> um1 = to_double_poly(chebyshev_U(m + 1)).compose(w_of_z);
                Polynomial<double> zd(std::vector<double>{0, 1});
                double sm = std::pow(s, m);
                Polynomial<double> p_closed = sm * ((zd - Polynomial<double>(lam)) * um) - (sm * s) * um1;
                Polynomial<double> q_closed = sm * (zd * um);
                const RatB& t = pq.transforms[static_cast<size_t>(m)];
                double dev = std::max(detail::poly_deviation(eval_lambda(t.num(), lq), p_closed),
                                      detail::poly_deviation(eval_lambda(t.den(), lq), q_closed));
                e.bivariate_deviation = std::max(e.bivariate_deviation, dev);
            }
            e.bivariate_ok = e.bivariate_deviation <= tol;
        }
        rep.all_ok = rep.all_ok && e.univariate_ok && e.bivariate_ok;
        rep.entries.push_back(e);
    }
    return rep;
}

} // namespace mfree
