#pragma once

#include "killingweb/poly.hpp"

namespace kw {

/// Quotient of two polynomials over the same variable list, kept in canonical
/// reduced form: gcd(num, den) is constant, den has integer coefficients with
/// content 1 and positive leading coefficient under the graded-lex order.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Poly p) : num_(std::move(p)) {
        den_ = Poly::constant(num_.vars(), Rational(1));
    }
    RatFun(Poly num, Poly den);

    static RatFun constant(const VarsPtr& vars, const Rational& c) {
        return RatFun(Poly::constant(vars, c));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarsPtr& vars() const { return num_.vars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun pow(long e) const;

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    /// Formal partial derivative (quotient rule, re-reduced).
    RatFun diff(const std::string& name) const;

    /// Exact evaluation; throws std::domain_error on a denominator zero.
    Rational eval(const std::map<std::string, Rational>& point) const;

    std::string to_string() const;

private:
    void normalize();

    Poly num_, den_;
};

}  // namespace kw
