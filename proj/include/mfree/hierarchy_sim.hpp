#pragma once

// Finite-dimensional simulator of the iterated-tensor GNS construction behind
// the hierarchy of freeness.  Each of N outer sites carries m inner tensor
// slots of a one-site GNS space (C^s, rep_x, omega); the state space is
// (C^s)^{x(N*m)} with the product vacuum.  The depth-k embedding of a one-site
// operator A at outer site l is
//     Gamma_{l,k}(A)      =  A at slot (l,k)   x   vacuum projections at
//                            slots (r,s) for every r != l, s >= k,
//     GammaHat_{l,k}(A)   =  the same with s >= k-1   (zero when k = 1),
// and the hierarchy operator is j_{l,k}(A) = Gamma_{l,k}(A) - GammaHat_{l,k}(A),
// summed over k = 1..m.  Correlations of these operators in the product
// vacuum realize the m-free product state; the pyramid expansion and the
// finite-N moment sums below verify its combinatorial structure.

#include "mfree/errors.hpp"
#include "mfree/measures.hpp"
#include "mfree/numeric.hpp"
#include "mfree/partitions.hpp"
#include "mfree/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfree {

inline constexpr size_t kDefaultEntryCap = 1000000; // state-vector entries
inline constexpr int kDefaultWordCap = 8;           // correlation word length

// One-site GNS data for a state on polynomials in one symmetric variable:
// rep_x is the s x s matrix of the generator (row-major), omega the cyclic
// unit vector; moments are <omega, rep_x^k omega>.
struct GnsData {
    int s = 0;
    std::vector<double> rep_x; // s*s, row-major, symmetric
    std::vector<double> omega; // length s, unit norm
};

// GNS triple of a discrete measure: rep_x = diag(atoms), omega = sqrt(weights).
inline GnsData make_gns(const DiscreteMeasure& d) {
    const int s = static_cast<int>(d.atoms.size());
    if (s == 0) throw std::invalid_argument("make_gns: empty measure");
    GnsData g;
    g.s = s;
    g.rep_x.assign(static_cast<size_t>(s) * s, 0.0);
    for (int i = 0; i < s; ++i) {
        if (!(d.weights[static_cast<size_t>(i)] > 0))
            throw std::invalid_argument("make_gns: measure has a non-positive weight (degenerate GNS)");
        g.rep_x[static_cast<size_t>(i) * s + i] = d.atoms[static_cast<size_t>(i)];
        g.omega.push_back(std::sqrt(d.weights[static_cast<size_t>(i)]));
    }
    return g;
}

using SiteMatrix = std::vector<double>; // s x s, row-major

// <omega, A omega>: the one-site state applied to a matrix.
inline double state_value(const GnsData& g, const SiteMatrix& a) {
    double v = 0.0;
    for (int i = 0; i < g.s; ++i)
        for (int j = 0; j < g.s; ++j)
            v += g.omega[static_cast<size_t>(i)] * a[static_cast<size_t>(i) * g.s + j] * g.omega[static_cast<size_t>(j)];
    return v;
}

inline SiteMatrix x_matrix(const GnsData& g) { return g.rep_x; }

// x - phi(x) * I: the mean-zero element used by the central-limit checks.
inline SiteMatrix centered_x_matrix(const GnsData& g) {
    SiteMatrix a = g.rep_x;
    double mean = state_value(g, a);
    for (int i = 0; i < g.s; ++i) a[static_cast<size_t>(i) * g.s + i] -= mean;
    return a;
}

// p(x) as a one-site matrix, by Horner's rule.
inline SiteMatrix matrix_from_poly(const GnsData& g, const PolyQ& p) {
    const int s = g.s;
    SiteMatrix r(static_cast<size_t>(s) * s, 0.0);
    for (int ci = p.degree(); ci >= 0; --ci) {
        SiteMatrix next(static_cast<size_t>(s) * s, 0.0);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) {
                double acc = 0.0;
                for (int k = 0; k < s; ++k)
                    acc += r[static_cast<size_t>(i) * s + k] * g.rep_x[static_cast<size_t>(k) * s + j];
                next[static_cast<size_t>(i) * s + j] = acc;
            }
        double c = to_double(p.coeff(ci));
        for (int i = 0; i < s; ++i) next[static_cast<size_t>(i) * s + i] += c;
        r = std::move(next);
    }
    return r;
}

// The truncated tensor space: slot (l,k), 1-based, lives at flat position
// (l-1)*m + (k-1); the first slot is the most significant tensor digit.
class SimConfig {
public:
    SimConfig(int N, int m, GnsData gns, size_t entry_cap = kDefaultEntryCap)
        : N_(N), m_(m), gns_(std::move(gns)) {
        if (N < 1) throw std::invalid_argument("SimConfig: need at least one outer site");
        if (m < 0) throw std::invalid_argument("SimConfig: negative depth");
        if (gns_.s < 1) throw std::invalid_argument("SimConfig: empty GNS data");
        const size_t s = static_cast<size_t>(gns_.s);
        T_ = N_ * m_;
        dim_ = 1;
        for (int t = 0; t < T_; ++t) {
            if (dim_ > entry_cap / s)
                throw resource_limit_error("SimConfig: state vector would exceed cap of " +
                                           std::to_string(entry_cap) + " entries");
            dim_ *= s;
        }
        strides_.resize(static_cast<size_t>(T_) + 1);
        size_t str = 1;
        for (int t = T_; t-- > 0;) {
            strides_[static_cast<size_t>(t)] = str;
            str *= s;
        }
    }

    int outer_sites() const { return N_; }
    int depth() const { return m_; }
    const GnsData& gns() const { return gns_; }
    size_t dim() const { return dim_; }
    int slot(int l, int k) const { // l in 1..N, k in 1..m
        if (l < 1 || l > N_ || k < 1 || k > m_)
            throw std::invalid_argument("SimConfig: site index out of range");
        return (l - 1) * m_ + (k - 1);
    }
    size_t stride(int slot) const { return strides_[static_cast<size_t>(slot)]; }

private:
    int N_, m_, T_;
    GnsData gns_;
    size_t dim_ = 1;
    std::vector<size_t> strides_;
};

using StateVector = std::vector<double>;

inline StateVector vacuum_state(const SimConfig& cfg) {
    StateVector v{1.0};
    v.reserve(cfg.dim());
    const auto& omega = cfg.gns().omega;
    const int s = cfg.gns().s;
    for (int t = 0; t < cfg.outer_sites() * cfg.depth(); ++t) {
        StateVector next(v.size() * static_cast<size_t>(s));
        for (size_t a = 0; a < v.size(); ++a)
            for (int i = 0; i < s; ++i) next[a * static_cast<size_t>(s) + i] = v[a] * omega[static_cast<size_t>(i)];
        v = std::move(next);
    }
    return v;
}

namespace detail {

// v <- (I x..x A x..x I) v with A acting on one tensor slot, in place.
inline void apply_at_slot(const SimConfig& cfg, StateVector& v, int slot, const SiteMatrix& a) {
    const size_t s = static_cast<size_t>(cfg.gns().s);
    const size_t str = cfg.stride(slot);
    const size_t block = str * s;
    std::vector<double> tmp(s);
    for (size_t hi = 0; hi < v.size(); hi += block)
        for (size_t lo = 0; lo < str; ++lo) {
            const size_t base = hi + lo;
            for (size_t i = 0; i < s; ++i) tmp[i] = v[base + i * str];
            for (size_t i = 0; i < s; ++i) {
                double acc = 0.0;
                for (size_t j = 0; j < s; ++j) acc += a[i * s + j] * tmp[j];
                v[base + i * str] = acc;
            }
        }
}

// v <- (I x..x |omega><omega| x..x I) v, rank-one fast path.
inline void project_vacuum_at_slot(const SimConfig& cfg, StateVector& v, int slot) {
    const size_t s = static_cast<size_t>(cfg.gns().s);
    const auto& omega = cfg.gns().omega;
    const size_t str = cfg.stride(slot);
    const size_t block = str * s;
    for (size_t hi = 0; hi < v.size(); hi += block)
        for (size_t lo = 0; lo < str; ++lo) {
            const size_t base = hi + lo;
            double c = 0.0;
            for (size_t i = 0; i < s; ++i) c += omega[i] * v[base + i * str];
            for (size_t i = 0; i < s; ++i) v[base + i * str] = omega[i] * c;
        }
}

} // namespace detail

// One depth component j_{l,k}(A) applied to a state vector.
inline StateVector apply_j_component(const SimConfig& cfg, int l, int k, const SiteMatrix& a,
                                     const StateVector& v) {
    StateVector g = v;
    detail::apply_at_slot(cfg, g, cfg.slot(l, k), a);
    for (int r = 1; r <= cfg.outer_sites(); ++r) {
        if (r == l) continue;
        for (int s2 = k; s2 <= cfg.depth(); ++s2)
            detail::project_vacuum_at_slot(cfg, g, cfg.slot(r, s2));
    }
    if (k == 1) return g; // the hatted embedding vanishes at depth 1
    // GammaHat differs from Gamma only by the extra projections at inner site k-1.
    StateVector ghat = g;
    for (int r = 1; r <= cfg.outer_sites(); ++r) {
        if (r == l) continue;
        detail::project_vacuum_at_slot(cfg, ghat, cfg.slot(r, k - 1));
    }
    for (size_t i = 0; i < g.size(); ++i) g[i] -= ghat[i];
    return g;
}

// The full hierarchy operator j_l(A) = sum_{k=1..m} j_{l,k}(A).
inline StateVector apply_j(const SimConfig& cfg, int l, const SiteMatrix& a, const StateVector& v) {
    StateVector out(v.size(), 0.0);
    for (int k = 1; k <= cfg.depth(); ++k) {
        StateVector term = apply_j_component(cfg, l, k, a, v);
        for (size_t i = 0; i < out.size(); ++i) out[i] += term[i];
    }
    return out;
}

struct WordFactor {
    int site = 1;      // outer site l
    SiteMatrix op;     // one-site matrix (e.g. centered_x_matrix)
};
using CorrelationWord = std::vector<WordFactor>;

// <Omega, j_{l_1}(a_1) ... j_{l_n}(a_n) Omega>: the word applies right-to-left.
inline double correlation(const SimConfig& cfg, const CorrelationWord& word,
                          int word_cap = kDefaultWordCap) {
    if (static_cast<int>(word.size()) > word_cap)
        throw resource_limit_error("correlation: word length " + std::to_string(word.size()) +
                                   " exceeds cap " + std::to_string(word_cap));
    StateVector v = vacuum_state(cfg);
    for (size_t i = word.size(); i-- > 0;) v = apply_j(cfg, word[i].site, word[i].op, v);
    return dot(vacuum_state(cfg), v);
}

// ---- pyramid expansion -------------------------------------------------------

// The set of depth-index tuples that can contribute to an n-factor correlation
// at depth m: contains() is the two-sided constraint p_k <= min(k, n+1-k, m).
// contains_one_sided() keeps only the constraints generated from the left half
// (a strictly smaller set for some n); it exists purely as a diagnostic foil,
// and pyramid_check() counts the nonzero contributions the one-sided variant
// would wrongly exclude.
struct PyramidSet {
    int n = 0, m = 0;

    bool contains(const std::vector<int>& p) const {
        for (int k = 1; k <= n; ++k) {
            int pk = p[static_cast<size_t>(k) - 1];
            if (pk < 1 || pk > std::min({k, n + 1 - k, m})) return false;
        }
        return true;
    }

    bool contains_one_sided(const std::vector<int>& p) const {
        for (int k = 1; 2 * k <= n; ++k) {
            int cap = std::min(k, m);
            if (p[static_cast<size_t>(k) - 1] > cap) return false;
            if (p[static_cast<size_t>(n - k) - 1] > cap) return false;
        }
        for (int k = 1; k <= n; ++k)
            if (p[static_cast<size_t>(k) - 1] < 1) return false;
        return true;
    }
};

struct PyramidReport {
    int n = 0, m = 0;
    double full_correlation = 0.0;
    double pyramid_sum = 0.0;        // sum of terms with depth tuple inside the pyramid
    double max_out_of_pyramid = 0.0; // largest |term| outside (should be ~0)
    size_t terms_total = 0;
    size_t terms_in_pyramid = 0;
    size_t terms_nonzero = 0;
    size_t one_sided_excluded_nonzero = 0; // nonzero terms the one-sided variant misses
    double tolerance = 0.0;
    bool ok = false;
};

// Expands the correlation over every depth-index assignment (k_1..k_n) in
// {1..m}^n, checks that assignments outside the pyramid contribute nothing,
// and that the in-pyramid terms sum back to the full correlation.
inline PyramidReport pyramid_check(const SimConfig& cfg, const CorrelationWord& word,
                                   double tol = 1e-12, int word_cap = kDefaultWordCap) {
    if (static_cast<int>(word.size()) > word_cap)
        throw resource_limit_error("pyramid_check: word length exceeds cap");
    const int n = static_cast<int>(word.size());
    const int m = cfg.depth();
    PyramidReport rep;
    rep.n = n;
    rep.m = m;
    rep.tolerance = tol;
    rep.full_correlation = correlation(cfg, word, word_cap);
    if (m == 0 && n > 0) { // no depth components exist; the correlation is identically 0
        rep.ok = std::abs(rep.full_correlation) <= tol;
        return rep;
    }

    PyramidSet pyramid{n, m};
    const StateVector vac = vacuum_state(cfg);
    std::vector<int> ks(static_cast<size_t>(n), 1);
    while (true) {
        StateVector v = vac;
        for (int i = n; i-- > 0;)
            v = apply_j_component(cfg, word[static_cast<size_t>(i)].site, ks[static_cast<size_t>(i)],
                                  word[static_cast<size_t>(i)].op, v);
        double term = dot(vac, v);
        rep.terms_total += 1;
        bool inside = pyramid.contains(ks);
        bool nonzero = std::abs(term) > tol;
        if (nonzero) rep.terms_nonzero += 1;
        if (inside) {
            rep.terms_in_pyramid += 1;
            rep.pyramid_sum += term;
            if (nonzero && !pyramid.contains_one_sided(ks)) rep.one_sided_excluded_nonzero += 1;
        } else {
            rep.max_out_of_pyramid = std::max(rep.max_out_of_pyramid, std::abs(term));
        }
        // next tuple in {1..m}^n
        int pos = n - 1;
        while (pos >= 0 && ks[static_cast<size_t>(pos)] == m) {
            ks[static_cast<size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) break;
        ks[static_cast<size_t>(pos)] += 1;
    }
    rep.ok = rep.max_out_of_pyramid <= tol &&
             std::abs(rep.pyramid_sum - rep.full_correlation) <= tol;
    return rep;
}

// ---- finite-size moment sums ---------------------------------------------------

namespace detail {

// Evaluates the sum over all set partitions P of {1..n} of
// (N)_{b(P)} * m(P), where m(P) is the correlation of the word that assigns
// block i of P to outer site i (permutation invariance makes the
// representative choice irrelevant) and (N)_b is the falling factorial.
// Partitions with more blocks than N contribute nothing and are skipped.
inline double partition_moment_sum(const GnsData& gns, const SiteMatrix& a, int m, int N, int n,
                                   size_t entry_cap, int word_cap) {
    if (n < 1) throw std::invalid_argument("partition_moment_sum: order must be positive");
    if (n > word_cap)
        throw resource_limit_error("partition_moment_sum: order " + std::to_string(n) +
                                   " exceeds word cap " + std::to_string(word_cap));
    double total = 0.0;
    enumerate_partitions(n, [&](const SetPartition& p) {
        const int b = p.block_count();
        if (b > N) return;
        SimConfig cfg(b, m, gns, entry_cap);
        CorrelationWord word(static_cast<size_t>(n));
        for (int bi = 0; bi < b; ++bi)
            for (int pos : p.blocks[static_cast<size_t>(bi)])
                word[static_cast<size_t>(pos) - 1] = WordFactor{bi + 1, a};
        total += to_double(falling_factorial(N, static_cast<unsigned>(b))) * correlation(cfg, word, word_cap);
    });
    return total;
}

} // namespace detail

// Exact finite-size moment of the normalized sum S = N^{-1/2} (j_1 + ... + j_N)
// applied to the centered generator of `gns`; converges to count_nc_pair(n, m)
// as N grows when phi(x^2) = 1.
inline double clt_moment_finite(const GnsData& gns, int m, int N, int n,
                                size_t entry_cap = kDefaultEntryCap, int word_cap = kDefaultWordCap) {
    if (N < 1) throw std::invalid_argument("clt_moment_finite: N must be positive");
    SiteMatrix a = centered_x_matrix(gns);
    double sum = detail::partition_moment_sum(gns, a, m, N, n, entry_cap, word_cap);
    return sum / std::pow(static_cast<double>(N), n / 2.0);
}

// Exact finite-size moment of S = j_1 + ... + j_N where each site carries the
// state (1 - lambda/N) delta_0 + (lambda/N) delta_1; converges to
// sum_b lambda^b count_nc(n, b, m) as N grows.
inline double poisson_moment_finite(int m, int N, int n, double lambda,
                                    size_t entry_cap = kDefaultEntryCap, int word_cap = kDefaultWordCap) {
    if (!(lambda > 0)) throw std::domain_error("poisson_moment_finite: lambda must be positive");
    if (N <= lambda)
        throw std::invalid_argument("poisson_moment_finite: need N > lambda for a valid site state");
    DiscreteMeasure site;
    site.atoms = {0.0, 1.0};
    site.weights = {1.0 - lambda / N, lambda / N};
    GnsData gns = make_gns(site);
    return detail::partition_moment_sum(gns, x_matrix(gns), m, N, n, entry_cap, word_cap);
}

} // namespace mfree
