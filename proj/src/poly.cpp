#include "killingweb/poly.hpp"

#include <algorithm>
#include <sstream>

namespace kw {

VarsPtr make_vars(std::initializer_list<const char*> names) {
    VarList v;
    v.reserve(names.size());
    for (auto* n : names) v.emplace_back(n);
    return std::make_shared<const VarList>(std::move(v));
}

VarsPtr make_vars(VarList names) {
    return std::make_shared<const VarList>(std::move(names));
}

Poly Poly::constant(VarsPtr vars, Rational c) {
    Poly p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(ExpVec(p.nvars(), 0), std::move(c));
    return p;
}

Poly Poly::variable(const VarsPtr& vars, size_t index) {
    if (!vars || index >= vars->size())
        throw std::invalid_argument("Poly::variable: index out of range");
    ExpVec e(vars->size(), 0);
    e[index] = 1;
    return monomial(vars, std::move(e), Rational(1));
}

Poly Poly::variable(const VarsPtr& vars, const std::string& name) {
    Poly probe(vars);
    return variable(vars, probe.var_index(name));
}

Poly Poly::monomial(VarsPtr vars, ExpVec exps, Rational c) {
    Poly p(std::move(vars));
    if (exps.size() != p.nvars())
        throw std::invalid_argument("Poly::monomial: exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), std::move(c));
    return p;
}

size_t Poly::var_index(const std::string& name) const {
    if (vars_) {
        for (size_t i = 0; i < vars_->size(); ++i)
            if ((*vars_)[i] == name) return i;
    }
    throw std::invalid_argument("Poly: unknown variable '" + name + "'");
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int32_t x) { return x == 0; });
}

Rational Poly::constant_value() const {
    if (!is_constant()) throw std::domain_error("Poly: not a constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int64_t Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = leading_exps();
    int64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

int32_t Poly::degree_in(size_t var) const {
    int32_t d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

const ExpVec& Poly::leading_exps() const {
    if (terms_.empty()) throw std::domain_error("Poly: zero polynomial has no leading term");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coef() const {
    if (terms_.empty()) throw std::domain_error("Poly: zero polynomial has no leading term");
    return terms_.rbegin()->second;
}

void Poly::require_same_vars(const Poly& o) const {
    if (vars_ == o.vars_) return;
    if (vars_ && o.vars_ && *vars_ == *o.vars_) return;
    throw std::invalid_argument("Poly: mismatched variable lists");
}

Poly Poly::operator-() const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

void Poly::add_term(const ExpVec& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.require_same_vars(b);
    Poly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    ExpVec e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(vars_, Rational(1));
    Poly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    a.require_same_vars(b);
    return a.terms_ == b.terms_;
}

Poly Poly::diff(size_t var) const {
    if (var >= nvars()) throw std::invalid_argument("Poly::diff: variable index out of range");
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec d = e;
        d[var] -= 1;
        r.add_term(d, c * Rational(e[var]));
    }
    return r;
}

Poly Poly::diff(const std::string& name) const { return diff(var_index(name)); }

Rational Poly::eval(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> vals(nvars(), Rational(0));
    std::vector<bool> bound(nvars(), false);
    for (size_t i = 0; i < nvars(); ++i) {
        auto it = point.find((*vars_)[i]);
        if (it != point.end()) {
            vals[i] = it->second;
            bound[i] = true;
        }
    }
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0 && !bound[i])
                throw std::invalid_argument("Poly::eval: missing binding for '" + (*vars_)[i] + "'");
    return eval(vals);
}

Rational Poly::eval(std::span<const Rational> values) const {
    if (values.size() != nvars())
        throw std::invalid_argument("Poly::eval: value count mismatch");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= values[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

double Poly::eval_double(std::span<const double> values) const {
    if (values.size() != nvars())
        throw std::invalid_argument("Poly::eval_double: value count mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.to_double();
        for (size_t i = 0; i < e.size(); ++i)
            for (int32_t k = 0; k < e[i]; ++k) t *= values[i];
        acc += t;
    }
    return acc;
}

Poly Poly::eval_partial(const std::map<std::string, Rational>& bindings) const {
    std::vector<std::optional<Rational>> vals(nvars());
    VarList rest;
    std::vector<size_t> rest_pos(nvars(), SIZE_MAX);
    for (size_t i = 0; i < nvars(); ++i) {
        auto it = bindings.find((*vars_)[i]);
        if (it != bindings.end()) {
            vals[i] = it->second;
        } else {
            rest_pos[i] = rest.size();
            rest.push_back((*vars_)[i]);
        }
    }
    Poly r(make_vars(std::move(rest)));
    ExpVec re(r.nvars());
    for (const auto& [e, c] : terms_) {
        Rational coef = c;
        std::fill(re.begin(), re.end(), 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (vals[i]) coef *= vals[i]->pow(e[i]);
            else re[rest_pos[i]] = e[i];
        }
        r.add_term(re, coef);
    }
    return r;
}

std::map<ExpVec, Poly, GrlexLess> Poly::collect(const std::vector<size_t>& selected) const {
    std::vector<bool> sel(nvars(), false);
    for (size_t i : selected) {
        if (i >= nvars()) throw std::invalid_argument("Poly::collect: index out of range");
        sel[i] = true;
    }
    VarList rest;
    std::vector<size_t> rest_pos(nvars(), SIZE_MAX);
    for (size_t i = 0; i < nvars(); ++i)
        if (!sel[i]) {
            rest_pos[i] = rest.size();
            rest.push_back((*vars_)[i]);
        }
    VarsPtr rest_vars = make_vars(std::move(rest));

    std::map<ExpVec, Poly, GrlexLess> out;
    ExpVec key(selected.size());
    ExpVec re(rest_vars->size());
    for (const auto& [e, c] : terms_) {
        for (size_t k = 0; k < selected.size(); ++k) key[k] = e[selected[k]];
        std::fill(re.begin(), re.end(), 0);
        for (size_t i = 0; i < e.size(); ++i)
            if (!sel[i]) re[rest_pos[i]] = e[i];
        auto it = out.find(key);
        if (it == out.end()) it = out.emplace(key, Poly(rest_vars)).first;
        it->second.add_term(re, c);
    }
    return out;
}

Poly Poly::embed(const VarsPtr& target, const std::vector<size_t>& where) const {
    if (where.size() != nvars())
        throw std::invalid_argument("Poly::embed: mapping length mismatch");
    Poly r(target);
    ExpVec te(target->size());
    for (const auto& [e, c] : terms_) {
        std::fill(te.begin(), te.end(), 0);
        for (size_t i = 0; i < e.size(); ++i) te[where[i]] = e[i];
        r.add_term(te, c);
    }
    return r;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(leading_coef().inv());
}

Rational Poly::integer_primitive_scale() const {
    if (terms_.empty()) return Rational(1);
    mpz_class den_lcm(1), num_gcd(0);
    for (const auto& [e, c] : terms_) {
        mpz_class d = c.denominator();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    for (const auto& [e, c] : terms_) {
        mpz_class n = c.numerator() * (den_lcm / c.denominator());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    }
    if (num_gcd == 0) num_gcd = 1;
    return Rational(mpq_class(den_lcm, num_gcd));
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) { os << "-"; a = -a; }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            a = a.abs();
        }
        first = false;
        bool any_var = std::any_of(e.begin(), e.end(), [](int32_t x) { return x != 0; });
        if (!a.is_one() || !any_var) os << a.to_string();
        bool star = !a.is_one() || !any_var;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (star) os << "*";
            star = true;
            os << (*vars_)[i];
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    Poly q(a.vars());
    Poly r = a;
    const ExpVec& lb = b.leading_exps();
    const Rational& cb = b.leading_coef();
    while (!r.is_zero()) {
        const ExpVec& lr = r.leading_exps();
        ExpVec qe(lr.size());
        for (size_t i = 0; i < lr.size(); ++i) {
            qe[i] = lr[i] - lb[i];
            if (qe[i] < 0) return std::nullopt;
        }
        Rational qc = r.leading_coef() / cb;
        Poly t = Poly::monomial(a.vars(), qe, qc);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

// Univariate view in variable v: coefficients (free of v) indexed by v-degree.
std::vector<Poly> coeffs_in(const Poly& p, size_t v) {
    int32_t d = p.degree_in(v);
    std::vector<Poly> out(static_cast<size_t>(d + 1), Poly(p.vars()));
    for (const auto& [e, c] : p.terms()) {
        ExpVec r = e;
        int32_t k = r[v];
        r[v] = 0;
        out[static_cast<size_t>(k)].add_term(r, c);
    }
    return out;
}

Poly from_coeffs(const std::vector<Poly>& cs, size_t v, const VarsPtr& vars) {
    Poly r(vars);
    for (size_t k = 0; k < cs.size(); ++k) {
        for (const auto& [e, c] : cs[k].terms()) {
            ExpVec t = e;
            t[v] += static_cast<int32_t>(k);
            r.add_term(t, c);
        }
    }
    return r;
}

// Pseudo-remainder of f by g, both viewed as univariate in v.
Poly pseudo_rem(const Poly& f, const Poly& g, size_t v) {
    int32_t df = f.degree_in(v), dg = g.degree_in(v);
    if (df < dg) return f;
    auto gc = coeffs_in(g, v);
    Poly lg = gc.back();
    Poly r = f;
    Poly xv = Poly::variable(f.vars(), v);
    while (!r.is_zero()) {
        int32_t dr = r.degree_in(v);
        if (dr < dg) break;
        auto rc = coeffs_in(r, v);
        Poly lead = rc.back();
        r = r * lg - lead * g * xv.pow(static_cast<unsigned>(dr - dg));
    }
    return r;
}

Poly content_in(const Poly& p, size_t v) {
    auto cs = coeffs_in(p, v);
    Poly g(p.vars());
    for (const auto& c : cs) g = poly_gcd(g, c);
    return g;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.vars(), Rational(1));

    size_t v = 0;
    while (a.degree_in(v) <= 0 && b.degree_in(v) <= 0) ++v;

    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly pa = *exact_divide(a, ca);
    Poly pb = *exact_divide(b, cb);
    Poly cg = poly_gcd(ca, cb);

    // Primitive pseudo-remainder sequence on the primitive parts.
    Poly f = pa, g = pb;
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    while (!g.is_zero()) {
        Poly r = pseudo_rem(f, g, v);
        if (!r.is_zero()) {
            Poly c = content_in(r, v);
            r = *exact_divide(r, c);
        }
        f = g;
        g = r;
    }
    if (f.degree_in(v) <= 0) return cg.monic();
    Poly fc = content_in(f, v);
    Poly prim = *exact_divide(f, fc);
    return (cg * prim).monic();
}

}  // namespace kw
