#pragma once

// Rational functions over an exact coefficient ring and their Laurent
// expansion at infinity.  Reduction keeps a unique canonical form so that
// rational-function identities can be tested by plain equality.

#include "mfree/polynomial.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace mfree {

namespace detail {

// Canonical scaling.  Univariate: monic denominator.  Bivariate: denominator's
// leading z-coefficient is an integer lambda-polynomial, content-free, with
// positive leading lambda-coefficient (only rational rescaling is possible).
inline void normalize_pair(PolyQ& num, PolyQ& den) {
    rational inv = exact_div(rational(1), den.leading());
    num = inv * num;
    den = inv * den;
}
inline void normalize_pair(PolyB& num, PolyB& den) {
    rational inv = exact_div(rational(1), rational_content(den.leading()));
    num = PolyL(inv) * num;
    den = PolyL(inv) * den;
}

} // namespace detail

template <typename T>
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial<T>(1)) {}
    RationalFunction(Polynomial<T> num, Polynomial<T> den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    }

    const Polynomial<T>& num() const { return num_; }
    const Polynomial<T>& den() const { return den_; }

    bool is_proper() const { return num_.degree() < den_.degree(); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

private:
    Polynomial<T> num_, den_;
};

using RatQ = RationalFunction<rational>;
using RatB = RationalFunction<PolyL>;

// Divides out the gcd and applies the canonical scaling.
template <typename T>
RationalFunction<T> reduce(const RationalFunction<T>& r) {
    Polynomial<T> num = r.num(), den = r.den();
    if (num.is_zero()) {
        Polynomial<T> one(1);
        return RationalFunction<T>(num, one);
    }
    Polynomial<T> g = gcd(num, den);
    if (g.degree() > 0 || !(g == Polynomial<T>(1))) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    detail::normalize_pair(num, den);
    return RationalFunction<T>(std::move(num), std::move(den));
}

// Formal expansion at infinity: coeffs[k] multiplies z^{-k-1}.
template <typename T>
struct LaurentSeries {
    std::vector<T> coeffs;
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Expands a proper rational function as sum_{k=0..order} c_k z^{-k-1} by
// exact long division in descending powers.  Requires deg num < deg den.
template <typename T>
LaurentSeries<T> series_at_infinity(const RationalFunction<T>& r, int order) {
    if (!r.is_proper())
        throw std::domain_error("series_at_infinity: rational function is not proper");
    if (order < 0) throw std::invalid_argument("series_at_infinity: negative order");
    const int D = r.den().degree();
    const T lead = r.den().coeff(D);
    const bool monic = lead == T(1);
    LaurentSeries<T> s;
    s.coeffs.reserve(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        // match the z^{D-1-k} coefficient of num = den * series
        T acc = r.num().coeff(D - 1 - k);
        for (int j = 0; j < k; ++j) acc = acc - r.den().coeff(D - k + j) * s.coeffs[static_cast<size_t>(j)];
        s.coeffs.push_back(monic ? acc : exact_div(acc, lead));
    }
    return s;
}

} // namespace mfree
