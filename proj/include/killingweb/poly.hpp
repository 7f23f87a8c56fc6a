#pragma once

#include "killingweb/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kw {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;
using ExpVec = std::vector<int32_t>;

VarsPtr make_vars(std::initializer_list<const char*> names);
VarsPtr make_vars(VarList names);

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lex with earlier variables ranked higher. This is the monomial order used
/// for canonical term storage, leading coefficients and sign normalization.
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        int64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients over an
/// ordered list of named variables. Canonical form is unique: no zero
/// coefficients are stored, so two polynomials are equal iff their term maps
/// are equal.
class Poly {
public:
    using TermMap = std::map<ExpVec, Rational, GrlexLess>;

    Poly() = default;
    explicit Poly(VarsPtr vars) : vars_(std::move(vars)) {}

    static Poly constant(VarsPtr vars, Rational c);
    static Poly variable(const VarsPtr& vars, size_t index);
    static Poly variable(const VarsPtr& vars, const std::string& name);
    static Poly monomial(VarsPtr vars, ExpVec exps, Rational c);

    const VarsPtr& vars() const { return vars_; }
    size_t nvars() const { return vars_ ? vars_->size() : 0; }
    const TermMap& terms() const { return terms_; }
    size_t var_index(const std::string& name) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Value of a constant polynomial (zero polynomial gives 0).
    Rational constant_value() const;
    int64_t total_degree() const;
    int32_t degree_in(size_t var) const;

    const ExpVec& leading_exps() const;
    const Rational& leading_coef() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Formal partial derivative with respect to one variable.
    Poly diff(size_t var) const;
    Poly diff(const std::string& name) const;

    /// Exact evaluation; every variable occurring in the polynomial must be bound.
    Rational eval(const std::map<std::string, Rational>& point) const;
    Rational eval(std::span<const Rational> values) const;
    double eval_double(std::span<const double> values) const;

    /// Substitute exact values for a subset of the variables; the result is a
    /// polynomial over the remaining variables (in their original order).
    Poly eval_partial(const std::map<std::string, Rational>& bindings) const;

    /// Group terms by their exponents on the selected variables. Keys are
    /// exponent vectors over the selection; values are polynomials over the
    /// remaining variables.
    std::map<ExpVec, Poly, GrlexLess> collect(const std::vector<size_t>& selected) const;

    /// Reinterpret over a superset variable list; `where[i]` is the position of
    /// this polynomial's i-th variable in `target`.
    Poly embed(const VarsPtr& target, const std::vector<size_t>& where) const;

    /// Divide by the leading coefficient; zero stays zero.
    Poly monic() const;
    /// The unique positive rational s such that s*p has integer coefficients
    /// with content 1. Zero polynomial gives 1.
    Rational integer_primitive_scale() const;

    std::string to_string() const;

    // Internal: direct term access for algorithms that build polynomials in place.
    void add_term(const ExpVec& e, const Rational& c);

private:
    void require_same_vars(const Poly& o) const;

    VarsPtr vars_;
    TermMap terms_;
};

/// Exact polynomial division; returns std::nullopt unless b divides a exactly.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

/// Multivariate GCD over the rationals, monic-normalized (gcd of zero and p is
/// the monic form of p; gcd with a nonzero constant is 1).
Poly poly_gcd(const Poly& a, const Poly& b);

}  // namespace kw
