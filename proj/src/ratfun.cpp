#include "killingweb/ratfun.hpp"

namespace kw {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
    normalize();
}

void RatFun::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.vars(), Rational(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = *exact_divide(num_, g);
        den_ = *exact_divide(den_, g);
    }
    Rational s = den_.integer_primitive_scale();
    if (den_.leading_coef().sign() < 0) s = -s;
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::pow(long e) const {
    if (e < 0) {
        if (is_zero()) throw std::domain_error("RatFun: negative power of zero");
        return RatFun(den_, num_).pow(-e);
    }
    return RatFun(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFun RatFun::diff(const std::string& name) const {
    size_t v = num_.var_index(name);
    return RatFun(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
}

Rational RatFun::eval(const std::map<std::string, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d.is_zero()) throw std::domain_error("RatFun: evaluation at a pole");
    return num_.eval(point) / d;
}

std::string RatFun::to_string() const {
    if (is_polynomial() && den_.constant_value().is_one()) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace kw
