#pragma once

// Depth-truncated full Fock space over a finite-dimensional one-particle
// space:  C Omega  (+)  H  (+)  H^{x2}  (+) ... (+)  H^{xm}.   Creation
// tensors on the left and annihilates the top grade; annihilation contracts
// the first tensor slot.  Vacuum expectations of words in these operators
// are checked against an independent combinatorial sum over non-crossing
// pair partitions of depth <= m.

#include "mfree/errors.hpp"
#include "mfree/partitions.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfree {

// The one-particle space models step functions over d orthonormal unit cells;
// inner products are plain Euclidean dot products (see dot in numeric.hpp).
using OneParticleVector = std::vector<double>;

enum class OpKind { create, annihilate };

struct OperatorFactor {
    OpKind kind;
    OneParticleVector vector;
};

// A word of creation/annihilation factors, written operator-style: when
// applied to a vector, the LAST factor acts first.
using OperatorWord = std::vector<OperatorFactor>;

class FockSpace {
public:
    FockSpace(int m, int d, size_t entry_cap = 1u << 22) : m_(m), d_(d) {
        if (m < 0) throw std::invalid_argument("FockSpace: negative depth");
        if (d < 1) throw std::invalid_argument("FockSpace: one-particle dimension must be positive");
        offsets_.resize(static_cast<size_t>(m) + 2);
        offsets_[0] = 0;
        size_t grade_dim = 1;
        for (int k = 0; k <= m; ++k) {
            offsets_[static_cast<size_t>(k) + 1] = offsets_[static_cast<size_t>(k)] + grade_dim;
            if (offsets_[static_cast<size_t>(k) + 1] > entry_cap)
                throw resource_limit_error("FockSpace: total dimension exceeds cap " + std::to_string(entry_cap));
            grade_dim *= static_cast<size_t>(d);
        }
    }

    int depth() const { return m_; }
    int particle_dim() const { return d_; }
    size_t total_dim() const { return offsets_.back(); }
    size_t grade_offset(int k) const { return offsets_[static_cast<size_t>(k)]; }
    size_t grade_dim(int k) const {
        return offsets_[static_cast<size_t>(k) + 1] - offsets_[static_cast<size_t>(k)];
    }

private:
    int m_, d_;
    std::vector<size_t> offsets_; // offsets_[k] = start of grade k; size m+2
};

struct FockVector {
    std::vector<double> data; // concatenated grade blocks 0..m
};

inline FockVector vacuum(const FockSpace& sp) {
    FockVector v{std::vector<double>(sp.total_dim(), 0.0)};
    v.data[0] = 1.0;
    return v;
}

inline double dot(const FockVector& a, const FockVector& b) {
    if (a.data.size() != b.data.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

// a*(f): grade k -> k+1 by tensoring f on the left; the top grade m is
// annihilated (this truncation is what makes the model m-free).
inline FockVector create(const FockSpace& sp, const OneParticleVector& f, const FockVector& v) {
    if (static_cast<int>(f.size()) != sp.particle_dim())
        throw std::invalid_argument("create: one-particle dimension mismatch");
    FockVector out{std::vector<double>(sp.total_dim(), 0.0)};
    for (int k = 0; k + 1 <= sp.depth(); ++k) {
        const size_t in_off = sp.grade_offset(k), in_dim = sp.grade_dim(k);
        const size_t out_off = sp.grade_offset(k + 1);
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i] == 0.0) continue;
            for (size_t t = 0; t < in_dim; ++t)
                out.data[out_off + i * in_dim + t] += f[i] * v.data[in_off + t];
        }
    }
    return out;
}

// a(f): grade k -> k-1 by contracting f against the first tensor slot;
// the vacuum maps to zero.
inline FockVector annihilate(const FockSpace& sp, const OneParticleVector& f, const FockVector& v) {
    if (static_cast<int>(f.size()) != sp.particle_dim())
        throw std::invalid_argument("annihilate: one-particle dimension mismatch");
    FockVector out{std::vector<double>(sp.total_dim(), 0.0)};
    for (int k = 1; k <= sp.depth(); ++k) {
        const size_t in_off = sp.grade_offset(k);
        const size_t out_dim = sp.grade_dim(k - 1), out_off = sp.grade_offset(k - 1);
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i] == 0.0) continue;
            for (size_t t = 0; t < out_dim; ++t)
                out.data[out_off + t] += f[i] * v.data[in_off + i * out_dim + t];
        }
    }
    return out;
}

inline FockVector apply(const FockSpace& sp, const OperatorFactor& op, const FockVector& v) {
    return op.kind == OpKind::create ? create(sp, op.vector, v) : annihilate(sp, op.vector, v);
}

// <Omega, w Omega>: the word is applied right-to-left to the vacuum.
inline double vacuum_expectation(const FockSpace& sp, const OperatorWord& w) {
    FockVector v = vacuum(sp);
    for (size_t i = w.size(); i-- > 0;) v = apply(sp, w[i], v);
    return v.data[0];
}

// Independent oracle for vacuum_expectation: sums over the non-crossing pair
// partitions of the word positions with depth <= m in which every pair joins
// an annihilator (left, position i) to a creator (right, position j > i);
// each such partition contributes the product of inner products <f_i, f_j>.
// All other pairings pick up a vanishing scalar factor and drop out; odd
// lengths give 0.
inline double combinatorial_expectation(int m, const OperatorWord& w) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return 1.0;
    if (n % 2 != 0 || m <= 0) return 0.0;
    double total = 0.0;
    enumerate_pair_partitions(n, [&](const SetPartition& p) {
        int d = detail::scan_depth(p);
        if (d < 0 || d > m) return;
        double term = 1.0;
        for (const auto& pr : p.blocks) {
            const OperatorFactor& left = w[static_cast<size_t>(pr[0]) - 1];
            const OperatorFactor& right = w[static_cast<size_t>(pr[1]) - 1];
            if (left.kind != OpKind::annihilate || right.kind != OpKind::create) {
                term = 0.0;
                break;
            }
            term *= dot(left.vector, right.vector);
        }
        total += term;
    });
    return total;
}

// Vacuum moments of the field operator x(f) = a*(f) + a(f) for a unit vector
// f; entry n is <Omega, x(f)^n Omega>, which equals count_nc_pair(n, m).
inline std::vector<double> field_moments(const FockSpace& sp, const OneParticleVector& f, int n_max) {
    if (std::abs(dot(f, f) - 1.0) > 1e-12)
        throw std::invalid_argument("field_moments: vector is not normalized");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n_max) + 1);
    FockVector v = vacuum(sp);
    out.push_back(v.data[0]);
    for (int n = 1; n <= n_max; ++n) {
        FockVector cv = create(sp, f, v);
        FockVector av = annihilate(sp, f, v);
        for (size_t i = 0; i < cv.data.size(); ++i) cv.data[i] += av.data[i];
        v = std::move(cv);
        out.push_back(v.data[0]);
    }
    return out;
}

// Dense matrix of a single operator (column-major application to basis
// vectors); intended for small spectral cross-checks only.
inline std::vector<std::vector<double>> operator_matrix(const FockSpace& sp, OpKind kind,
                                                        const OneParticleVector& f,
                                                        size_t dim_cap = 4096) {
    const size_t dim = sp.total_dim();
    if (dim > dim_cap)
        throw resource_limit_error("operator_matrix: dimension " + std::to_string(dim) +
                                   " exceeds cap " + std::to_string(dim_cap));
    std::vector<std::vector<double>> mat(dim, std::vector<double>(dim, 0.0));
    FockVector basis{std::vector<double>(dim, 0.0)};
    for (size_t j = 0; j < dim; ++j) {
        basis.data.assign(dim, 0.0);
        basis.data[j] = 1.0;
        FockVector col = apply(sp, OperatorFactor{kind, f}, basis);
        for (size_t i = 0; i < dim; ++i) mat[i][j] = col.data[i];
    }
    return mat;
}

} // namespace mfree
