#include "killingweb/poly.hpp"
#include "killingweb/ratfun.hpp"
#include "killingweb/ratmatrix.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

using namespace kw;

TEST_CASE("rational canonical form and serialization") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(-3, -6).to_string() == "1/2");
    CHECK(Rational(3, -6).to_string() == "-1/2");
    CHECK(Rational(0, 7).to_string() == "0");
    CHECK(Rational::from_string("12/8") == Rational(3, 2));
    CHECK(Rational::from_string("-5") == Rational(-5));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 3) / Rational(0), std::domain_error);
    CHECK(Rational(7, 3).pow(-2) == Rational(9, 49));

    for (int t = 0; t < 50; ++t) {
        Rational r = oracle::rnd_rational(-50, 50, 40);
        CHECK(Rational::from_string(r.to_string()) == r);
        mpz_class g;
        mpz_class n = r.numerator(), d = r.denominator();
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        CHECK(d > 0);
        CHECK((r.is_zero() ? g == 0 : g == 1));
    }
}

TEST_CASE("polynomial arithmetic basics") {
    VarsPtr xy = make_vars({"x", "y"});
    Poly x = Poly::variable(xy, size_t{0});
    Poly y = Poly::variable(xy, size_t{1});
    Poly one = Poly::constant(xy, Rational(1));

    CHECK((x + y) + (x - y) == x.scaled(Rational(2)));
    CHECK((x + one) * (x - one) == x * x - one);
    CHECK((x - x).is_zero());

    VarsPtr other = make_vars({"u", "v"});
    CHECK_THROWS_AS(x + Poly::variable(other, size_t{0}), std::invalid_argument);
}

TEST_CASE("polynomial product against naive convolution oracle") {
    VarsPtr vars = make_vars({"x", "y", "z"});
    for (int t = 0; t < 25; ++t) {
        Poly a = oracle::rnd_poly(vars, 4, 6);
        Poly b = oracle::rnd_poly(vars, 4, 6);
        CHECK(a * b == oracle::naive_multiply(a, b));
    }
}

TEST_CASE("canonical uniqueness: p - q is zero iff term maps equal") {
    VarsPtr vars = make_vars({"x", "y"});
    for (int t = 0; t < 25; ++t) {
        Poly p = oracle::rnd_poly(vars, 3, 5);
        Poly q = oracle::rnd_poly(vars, 3, 5);
        CHECK(((p - q).is_zero()) == (p.terms() == q.terms()));
        // rebuilding through a different operation order gives the identical map
        Poly r = (p + q) - q;
        CHECK(r == p);
        CHECK(r.terms() == p.terms());
    }
}

TEST_CASE("formal derivative") {
    VarsPtr vars = make_vars({"x", "y"});
    Poly x = Poly::variable(vars, size_t{0});
    Poly y = Poly::variable(vars, size_t{1});

    CHECK((x * x * y).diff("x") == x.scaled(Rational(2)) * y);
    CHECK(Poly::constant(vars, Rational(9)).diff("x").is_zero());
    CHECK_THROWS_AS(x.diff("w"), std::invalid_argument);

    // product rule on random pairs
    for (int t = 0; t < 20; ++t) {
        Poly p = oracle::rnd_poly(vars, 3, 5);
        Poly q = oracle::rnd_poly(vars, 3, 5);
        CHECK((p * q).diff(size_t{0}) == p.diff(size_t{0}) * q + p * q.diff(size_t{0}));
    }
}

TEST_CASE("evaluation") {
    VarsPtr vars = make_vars({"x", "y"});
    Poly x = Poly::variable(vars, size_t{0});
    Poly y = Poly::variable(vars, size_t{1});
    Poly p = x * x + y;
    CHECK(p.eval({{"x", Rational(2)}, {"y", Rational(3)}}) == Rational(7));
    CHECK(Poly(vars).eval(std::map<std::string, Rational>{}) == Rational(0));
    CHECK_THROWS_AS(p.eval({{"x", Rational(2)}}), std::invalid_argument);

    for (int t = 0; t < 20; ++t) {
        Poly q = oracle::rnd_poly(vars, 4, 6);
        std::vector<Rational> vals = {oracle::rnd_rational(), oracle::rnd_rational()};
        CHECK(q.eval(vals) == oracle::naive_eval(q, vals));
    }
}

TEST_CASE("collect and embed") {
    VarsPtr vars = make_vars({"a", "x"});
    Poly a = Poly::variable(vars, size_t{0});
    Poly x = Poly::variable(vars, size_t{1});
    Poly p = a * x * x + a * a * x + Poly::constant(vars, Rational(3));
    auto groups = p.collect({1});  // group by x exponent
    CHECK(groups.size() == 3);
    CHECK(groups.at(ExpVec{2}).to_string() == "a");
    CHECK(groups.at(ExpVec{1}).to_string() == "a^2");
    CHECK(groups.at(ExpVec{0}).to_string() == "3");

    VarsPtr big = make_vars({"w", "a", "x"});
    Poly q = p.embed(big, {1, 2});
    CHECK(q.eval({{"w", Rational(5)}, {"a", Rational(1)}, {"x", Rational(2)}}) ==
          p.eval({{"a", Rational(1)}, {"x", Rational(2)}}));
}

TEST_CASE("exact division and gcd") {
    VarsPtr vars = make_vars({"x", "y"});
    Poly x = Poly::variable(vars, size_t{0});
    Poly y = Poly::variable(vars, size_t{1});
    Poly one = Poly::constant(vars, Rational(1));

    auto q = exact_divide((x + y) * (x - y), x + y);
    REQUIRE(q.has_value());
    CHECK(*q == x - y);
    CHECK(!exact_divide(x * x + one, x + one).has_value());

    CHECK(poly_gcd((x + y) * (x + one), (x + y) * (y + one)) == (x + y).monic());
    for (int t = 0; t < 15; ++t) {
        Poly g = oracle::rnd_poly(vars, 2, 3);
        Poly p = oracle::rnd_poly(vars, 2, 3);
        Poly r = oracle::rnd_poly(vars, 2, 3);
        if (g.is_zero() || p.is_zero() || r.is_zero()) continue;
        Poly d = poly_gcd(g * p, g * r);
        CHECK(exact_divide(d, poly_gcd(d, g.monic())).has_value());
        // gcd divides both products
        CHECK(exact_divide(g * p, d).has_value());
        CHECK(exact_divide(g * r, d).has_value());
    }
}

TEST_CASE("rational function reduction is canonical") {
    VarsPtr vars = make_vars({"x", "y", "z"});
    for (int t = 0; t < 15; ++t) {
        Poly num = oracle::rnd_poly(vars, 3, 4);
        Poly den = oracle::rnd_poly(vars, 3, 4);
        if (den.is_zero()) continue;
        RatFun f(num, den);
        Poly mult = oracle::rnd_poly(vars, 2, 3);
        if (mult.is_zero()) continue;
        RatFun g(num * mult, den * mult);
        CHECK(f == g);
        CHECK(f.den().leading_coef() > Rational(0));
        CHECK(f.den().integer_primitive_scale() == Rational(1));
        CHECK(poly_gcd(f.num(), f.den()).is_constant());
    }
    CHECK_THROWS_AS(RatFun(Poly::constant(vars, Rational(1)), Poly(vars)), std::domain_error);
}

TEST_CASE("nullspace basics") {
    RatMatrix zero(3, 5);
    CHECK(nullspace(zero).size() == 5);

    RatMatrix id(4, 4);
    for (size_t i = 0; i < 4; ++i) id.at(i, i) = Rational(1);
    CHECK(nullspace(id).empty());
}

TEST_CASE("nullspace against Bareiss rank oracle") {
    for (int t = 0; t < 12; ++t) {
        RatMatrix m(6, 10);
        // random rank deficiency: generate as product of 6xk and kx10
        std::uniform_int_distribution<int> kd(1, 6);
        int k = kd(oracle::rng());
        std::vector<std::vector<Rational>> l(6, std::vector<Rational>(k)),
            r(k, std::vector<Rational>(10));
        for (auto& row : l)
            for (auto& v : row) v = oracle::rnd_rational(-4, 4, 3);
        for (auto& row : r)
            for (auto& v : row) v = oracle::rnd_rational(-4, 4, 3);
        for (size_t i = 0; i < 6; ++i)
            for (size_t j = 0; j < 10; ++j) {
                Rational acc(0);
                for (int s = 0; s < k; ++s) acc += l[i][s] * r[s][j];
                m.at(i, j) = acc;
            }
        size_t rank = oracle::bareiss_rank(m);
        auto ns = nullspace(m);
        CHECK(ns.size() == 10 - rank);
        // soundness: every vector annihilated exactly
        for (const auto& v : ns)
            for (size_t i = 0; i < 6; ++i) {
                Rational acc(0);
                for (size_t j = 0; j < 10; ++j) acc += m.at(i, j) * v[j];
                CHECK(acc.is_zero());
            }
        // completeness: stacking any annihilated vector keeps the rank
        if (!ns.empty()) {
            RatMatrix stacked(ns.size() + 1, 10);
            for (size_t i = 0; i < ns.size(); ++i)
                for (size_t j = 0; j < 10; ++j) stacked.at(i, j) = ns[i][j];
            for (size_t j = 0; j < 10; ++j) {
                Rational acc(0);
                for (const auto& v : ns) acc += v[j];
                stacked.at(ns.size(), j) = acc;
            }
            CHECK(stacked.rank() == ns.size());
        }
    }
}

TEST_CASE("nullspace output is deterministic") {
    RatMatrix m(2, 4);
    m.at(0, 0) = Rational(1);
    m.at(0, 2) = Rational(2);
    m.at(1, 1) = Rational(1);
    m.at(1, 3) = Rational(-1);
    auto a = nullspace(m);
    auto b = nullspace(m);
    CHECK(a == b);
    REQUIRE(a.size() == 2);
    CHECK(a[0][2] == Rational(1));
    CHECK(a[0][0] == Rational(-2));
}
