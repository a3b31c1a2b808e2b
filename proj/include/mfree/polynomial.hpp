#pragma once

// Dense polynomials over an exact coefficient ring, canonical form (no
// trailing zeros), with divmod, gcd, and composition.  Instantiated at
// rational (polynomials in z or in lambda) and at Polynomial<rational>
// (bivariate: z-polynomials whose coefficients are lambda-polynomials).

#include "mfree/numeric.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mfree {

template <typename T>
class Polynomial {
public:
    Polynomial() = default; // zero polynomial
    Polynomial(const T& constant) : c_{constant} { trim(); }
    Polynomial(int constant) : c_{T(constant)} { trim(); }
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(const T& coef, int power) {
        std::vector<T> c(static_cast<size_t>(power) + 1, T(0));
        c.back() = coef;
        return Polynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero

    // Coefficient of x^i; zero beyond the degree.
    T coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return T(0);
        return c_[static_cast<size_t>(i)];
    }
    const T& leading() const {
        if (c_.empty()) throw std::domain_error("Polynomial: zero polynomial has no leading coefficient");
        return c_.back();
    }
    const std::vector<T>& coeffs() const { return c_; }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        Polynomial r = p;
        for (auto& x : r.c_) x = s * x;
        r.trim();
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    T eval(const T& x) const {
        T r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // Evaluation into another ring; conv maps each coefficient into U.
    template <typename U, typename Conv>
    U eval_as(const U& x, Conv&& conv) const {
        U r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + conv(c_[i]);
        return r;
    }

    // p(inner): substitution, Horner in the polynomial ring.
    Polynomial compose(const Polynomial& inner) const {
        Polynomial r;
        for (size_t i = c_.size(); i-- > 0;) r = r * inner + Polynomial(c_[i]);
        return r;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<T> c(c_.size() - 1, T(0));
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = T(static_cast<int>(i)) * c_[i];
        return Polynomial(std::move(c));
    }

private:
    std::vector<T> c_;
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
};

using PolyQ = Polynomial<rational>;          // in z (or in lambda, context-dependent)
using PolyL = Polynomial<rational>;          // alias used where the variable is lambda
using PolyB = Polynomial<PolyL>;             // in z, coefficients in Q[lambda]

// ---- coefficient division -------------------------------------------------

inline rational exact_div(const rational& a, const rational& b) {
    if (b == 0) throw std::domain_error("exact_div: division by zero");
    return a / b;
}
inline double exact_div(double a, double b) { return a / b; }

inline std::pair<PolyQ, PolyQ> divmod(const PolyQ& num, const PolyQ& den);

// Division in Q[lambda]; throws unless the quotient is exact.
inline PolyL exact_div(const PolyL& a, const PolyL& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("exact_div: polynomial division is not exact");
    return q;
}

// ---- divmod (valid over a field, or whenever every step divides exactly) --

template <typename T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
    if (den.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    Polynomial<T> q, r = num;
    while (!r.is_zero() && r.degree() >= den.degree()) {
        T step = exact_div(r.leading(), den.leading());
        auto mono = Polynomial<T>::monomial(step, r.degree() - den.degree());
        q = q + mono;
        r = r - mono * den;
    }
    return {q, r};
}

inline std::pair<PolyQ, PolyQ> divmod(const PolyQ& num, const PolyQ& den) {
    return divmod<rational>(num, den);
}

// ---- gcd ------------------------------------------------------------------

// Euclid over the field Q; result is monic (or zero).
inline PolyQ gcd(const PolyQ& a, const PolyQ& b) {
    PolyQ x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = divmod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return exact_div(rational(1), x.leading()) * x;
}

// Rational content of a lambda-polynomial, signed so that dividing by it
// leaves integer coefficients with gcd 1 and a positive leading coefficient.
inline rational rational_content(const PolyL& p) {
    if (p.is_zero()) return rational(1);
    integer num_gcd = 0, den_lcm = 1;
    for (const auto& q : p.coeffs()) {
        if (q == 0) continue;
        num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(numerator(q)));
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(q));
    }
    rational c(num_gcd, den_lcm);
    if (p.leading() < 0) c = -c;
    return c;
}

// Content and primitive part of a bivariate polynomial: the content is the
// monic gcd in Q[lambda] of all z-coefficients, made canonical by stripping
// its rational content.
inline PolyL content(const PolyB& p) {
    PolyL g;
    for (const auto& c : p.coeffs()) g = gcd(g, c);
    if (g.is_zero()) return g;
    return exact_div(rational(1), rational_content(g)) * g; // integer, primitive, positive lead
}

inline PolyB primitive_part(const PolyB& p) {
    if (p.is_zero()) return p;
    PolyL c = content(p);
    std::vector<PolyL> out;
    out.reserve(static_cast<size_t>(p.degree()) + 1);
    for (const auto& ci : p.coeffs()) out.push_back(exact_div(ci, c));
    return PolyB(std::move(out));
}

// Pseudo-remainder: a multiple of rem(a, b) computable without coefficient
// division (a, b in Q[lambda][z], b nonzero).
inline PolyB pseudo_rem(const PolyB& a, const PolyB& b) {
    PolyB r = a;
    const PolyL& lb = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        PolyB t = PolyB::monomial(r.leading(), r.degree() - b.degree()) * b;
        r = lb * r - t;
    }
    return r;
}

// Primitive PRS gcd over Q[lambda][z]; canonical: primitive in lambda with a
// positive leading coefficient.  content() is sign-blind (the inner gcd is
// monic), so the overall sign survives the PRS steps and must be fixed last.
inline PolyB gcd(const PolyB& a, const PolyB& b) {
    if (a.is_zero() && b.is_zero()) return a;
    PolyB x, y;
    if (a.is_zero() || b.is_zero()) {
        x = primitive_part(a.is_zero() ? b : a);
    } else {
        PolyL cont_gcd = gcd(content(a), content(b));
        x = primitive_part(a);
        y = primitive_part(b);
        if (x.degree() < y.degree()) std::swap(x, y);
        while (!y.is_zero()) {
            PolyB r = pseudo_rem(x, y);
            x = y;
            y = r.is_zero() ? r : primitive_part(r);
        }
        x = Polynomial<PolyL>(cont_gcd) * x;
    }
    if (x.leading().leading() < 0) x = -x;
    return x;
}

// Evaluate the lambda variable of a bivariate polynomial, leaving a z-polynomial.
inline PolyQ eval_lambda(const PolyB& p, const rational& lambda) {
    std::vector<rational> out;
    out.reserve(static_cast<size_t>(p.degree()) + 1);
    for (const auto& c : p.coeffs()) out.push_back(c.eval(lambda));
    return PolyQ(std::move(out));
}

// Double-precision image of an exact z-polynomial.
inline Polynomial<double> to_double_poly(const PolyQ& p) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(p.degree()) + 1);
    for (const auto& c : p.coeffs()) out.push_back(to_double(c));
    return Polynomial<double>(std::move(out));
}

} // namespace mfree
