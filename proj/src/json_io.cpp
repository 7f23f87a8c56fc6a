#include "killingweb/json_io.hpp"

namespace kw {

using nlohmann::json;

json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    throw std::invalid_argument("expected a rational as \"p/q\" string");
}

json poly_to_json(const Poly& p) {
    json terms = json::array();
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        json e = json::array();
        for (auto x : it->first) e.push_back(x);
        terms.push_back({{"exps", e}, {"coef", it->second.to_string()}});
    }
    return terms;
}

Poly poly_from_json(const json& j, const VarsPtr& vars) {
    Poly p(vars);
    for (const auto& term : j) {
        ExpVec e;
        for (const auto& x : term.at("exps")) e.push_back(x.get<int32_t>());
        p.add_term(e, rational_from_json(term.at("coef")));
    }
    return p;
}

namespace {

json rvec(std::initializer_list<Rational> v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.to_string());
    return a;
}

json dvec(const Vec3<double>& v) { return json::array({v[0], v[1], v[2]}); }

json dmat(const Mat3<double>& m) {
    json rows = json::array();
    for (size_t i = 0; i < 3; ++i) rows.push_back(json::array({m[i][0], m[i][1], m[i][2]}));
    return rows;
}

Rational jr(const json& j) { return rational_from_json(j); }

}  // namespace

json kt_to_json(const KTParams& k) {
    json b = json::array();
    for (size_t i = 0; i < 3; ++i)
        b.push_back(json::array({k.B[i][0].to_string(), k.B[i][1].to_string(),
                                 k.B[i][2].to_string()}));
    return {{"schema", kSchemaTag},
            {"a", rvec({k.A[0][0], k.A[1][1], k.A[2][2]})},
            {"alpha", rvec({k.A[1][2], k.A[0][2], k.A[0][1]})},
            {"b", b},
            {"c", rvec({k.C[0][0], k.C[1][1], k.C[2][2]})},
            {"gamma", rvec({k.C[1][2], k.C[0][2], k.C[0][1]})}};
}

KTParams kt_from_json(const json& j) {
    KTParams k = KTParams::zero();
    const auto& a = j.at("a");
    const auto& al = j.at("alpha");
    const auto& c = j.at("c");
    const auto& g = j.at("gamma");
    k.A[0][0] = jr(a.at(0));
    k.A[1][1] = jr(a.at(1));
    k.A[2][2] = jr(a.at(2));
    k.A[1][2] = k.A[2][1] = jr(al.at(0));
    k.A[0][2] = k.A[2][0] = jr(al.at(1));
    k.A[0][1] = k.A[1][0] = jr(al.at(2));
    const auto& b = j.at("b");
    for (size_t i = 0; i < 3; ++i)
        for (size_t jj = 0; jj < 3; ++jj) k.B[i][jj] = jr(b.at(i).at(jj));
    k.C[0][0] = jr(c.at(0));
    k.C[1][1] = jr(c.at(1));
    k.C[2][2] = jr(c.at(2));
    k.C[1][2] = k.C[2][1] = jr(g.at(0));
    k.C[0][2] = k.C[2][0] = jr(g.at(1));
    k.C[0][1] = k.C[1][0] = jr(g.at(2));
    return k;
}

json kv_to_json(const KVParams& v) {
    return {{"schema", kSchemaTag},
            {"a", rvec({v.A[0], v.A[1], v.A[2]})},
            {"c", rvec({v.C[0], v.C[1], v.C[2]})}};
}

KVParams kv_from_json(const json& j) {
    KVParams v;
    for (size_t i = 0; i < 3; ++i) {
        v.A[i] = jr(j.at("a").at(i));
        v.C[i] = jr(j.at("c").at(i));
    }
    return v;
}

json isometry_to_json(const IsometryD& h) {
    return {{"lambda", dmat(h.lambda)}, {"delta", dvec(h.delta)}};
}

json chart_to_json(const SeparableChart& c) {
    json ess = json::object();
    if (c.essential.a) ess["a"] = *c.essential.a;
    if (c.essential.b) ess["b"] = *c.essential.b;
    if (c.essential.c) ess["c"] = *c.essential.c;
    return {{"schema", kSchemaTag},
            {"web", web_name(c.web)},
            {"lambda", dmat(c.frame.lambda)},
            {"delta", dvec(c.frame.delta)},
            {"essential", ess}};
}

json report_to_json(const ClassificationReport& r) {
    json basis = json::array();
    for (const auto& v : r.symmetry_basis) basis.push_back(kv_to_json(v));
    json deltas = json::object();
    for (size_t i = 0; i < 15; ++i)
        deltas["Delta" + std::to_string(i + 1)] = r.full_deltas[i].to_string();
    json xi = json::object();
    for (size_t i = 0; i < 6; ++i) xi["Xi" + std::to_string(i + 1)] = r.xi[i].to_string();
    json out = {{"schema", kSchemaTag},
                {"web", web_name(r.web)},
                {"aligning_isometry", isometry_to_json(r.aligning_isometry)},
                {"symmetry_basis", basis},
                {"invariants", {{"full", deltas}, {"xi", xi}}}};
    if (r.translational_deltas)
        out["invariants"]["translational"] =
            json::array({r.translational_deltas->first, r.translational_deltas->second});
    if (r.rotational_deltas) {
        json q = json::array();
        for (double v : *r.rotational_deltas) q.push_back(v);
        out["invariants"]["rotational"] = q;
    }
    return out;
}

json separability_to_json(const SeparabilityReport& r) {
    json basis = json::array();
    for (const auto& k : r.space.basis) basis.push_back(kt_to_json(k));
    json ckts = json::array();
    for (const auto& d : r.ckts) {
        json coefs = json::array();
        for (const auto& c : d.coefficients) coefs.push_back(c.to_string());
        ckts.push_back({{"tensor", kt_to_json(d.tensor)},
                        {"coefficients", coefs},
                        {"classification", report_to_json(d.report)},
                        {"chart", chart_to_json(d.chart)}});
    }
    json webs = json::array();
    for (WebClass w : r.distinct_webs) webs.push_back(web_name(w));
    return {{"schema", kSchemaTag},
            {"potential", r.potential},
            {"compatible_space",
             {{"dimension", r.space.dimension()},
              {"metric_index",
               r.space.metric_index ? json(*r.space.metric_index) : json(nullptr)},
              {"basis", basis}}},
            {"ckts", ckts},
            {"combinations_tried", r.combinations_tried},
            {"distinct_webs", webs}};
}

json invariants_to_json(const KTParams& k) {
    auto deltas = full_invariants(k);
    auto xi = xi_invariants(deltas);
    json jd = json::object(), jx = json::object();
    for (size_t i = 0; i < 15; ++i) jd["Delta" + std::to_string(i + 1)] = deltas[i].to_string();
    for (size_t i = 0; i < 6; ++i) jx["Xi" + std::to_string(i + 1)] = xi[i].to_string();
    json out = {{"schema", kSchemaTag}, {"full", jd}, {"xi", jx}};
    KTParams n = kt_normalized(k);
    if (is_translational_form(n)) {
        auto [d1, d2] = translational_invariants(n);
        out["translational"] = json::array({d1.to_string(), d2.to_string()});
    }
    if (is_rotational_form(n)) {
        auto q = rotational_invariants(n);
        out["rotational"] =
            json::array({q[0].to_string(), q[1].to_string(), q[2].to_string(), q[3].to_string()});
    }
    return out;
}

json kv_invariants_to_json(const KVParams& v) {
    auto [d1, d2] = kv_invariants(v);
    json out = {{"schema", kSchemaTag},
                {"kv", json::array({d1.to_string(), d2.to_string()})}};
    if (!v.is_zero()) {
        KvClass c = classify_kv(v);
        out["class"] = c.kind == KvKind::TRANSLATIONAL ? "TRANSLATIONAL"
                       : c.kind == KvKind::ROTATIONAL  ? "ROTATIONAL"
                                                       : "HELICOIDAL";
        if (c.kind == KvKind::HELICOIDAL) out["handedness"] = c.handedness;
    }
    return out;
}

}  // namespace kw
