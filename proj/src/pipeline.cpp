#include "killingweb/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace kw {

namespace {

// 20-coordinate compatibility ring: the b-diagonal enters only through the
// betas, so beta1, beta2 replace b11, b22, b33 (beta3 = -beta1-beta2).
const std::array<const char*, 20> kCompatNames = {
    "a1", "a2", "a3", "al1", "al2", "al3", "be1", "be2", "b23", "b31",
    "b12", "b32", "b13", "b21", "c1", "c2", "c3", "g1", "g2", "g3"};

const VarsPtr& compat_ring() {
    static const VarsPtr ring = [] {
        VarList v;
        for (const char* n : kCompatNames) v.emplace_back(n);
        v.insert(v.end(), {"x", "y", "z"});
        return make_vars(std::move(v));
    }();
    return ring;
}

/// Component polynomials of the generic Killing tensor over the compatibility
/// ring, linear in the 20 parameters.
const Mat3<Poly>& generic_components() {
    static const Mat3<Poly> K = [] {
        const VarsPtr& ring = compat_ring();
        auto var = [&](size_t i) { return Poly::variable(ring, i); };
        Rational third(1, 3);
        Poly be1 = var(6), be2 = var(7);
        std::vector<Poly> p21;
        for (size_t i = 0; i < 6; ++i) p21.push_back(var(i));
        p21.push_back((-be1 - be2.scaled(Rational(2))).scaled(third));   // b11
        p21.push_back((be1.scaled(Rational(2)) + be2).scaled(third));    // b22
        p21.push_back((be2 - be1).scaled(third));                        // b33
        for (size_t i = 8; i < 20; ++i) p21.push_back(var(i));
        return kt_components_generic(p21, ring, {20, 21, 22});
    }();
    return K;
}

/// Numerators of the curl of ω = K·dV after clearing the common denominator:
///   E_{jk} = Q·(∂_k W_j − ∂_j W_k) − 2·(W_j Q_{,k} − W_k Q_{,j}),
/// with W_j = Σ_i K^{ji} (P_{,i} Q − P Q_{,i}) and V = P/Q.
std::array<Poly, 3> curl_numerators(const Mat3<Poly>& K, const Poly& P, const Poly& Q,
                                    const std::array<size_t, 3>& xyz) {
    const VarsPtr& ring = P.vars();
    std::array<Poly, 3> dP = {P.diff(xyz[0]), P.diff(xyz[1]), P.diff(xyz[2])};
    std::array<Poly, 3> dQ = {Q.diff(xyz[0]), Q.diff(xyz[1]), Q.diff(xyz[2])};
    std::array<Poly, 3> grad;
    for (size_t i = 0; i < 3; ++i) grad[i] = dP[i] * Q - P * dQ[i];

    std::array<Poly, 3> W = {Poly(ring), Poly(ring), Poly(ring)};
    for (size_t j = 0; j < 3; ++j)
        for (size_t i = 0; i < 3; ++i) W[j] += K[j][i] * grad[i];

    std::array<std::array<Poly, 3>, 3> dW;
    for (size_t j = 0; j < 3; ++j)
        for (size_t m = 0; m < 3; ++m) dW[j][m] = W[j].diff(xyz[m]);

    std::array<Poly, 3> out = {Poly(ring), Poly(ring), Poly(ring)};
    size_t idx = 0;
    for (size_t j = 0; j < 3; ++j)
        for (size_t k = j + 1; k < 3; ++k) {
            Poly e = Q * (dW[j][k] - dW[k][j]) -
                     (W[j] * dQ[k] - W[k] * dQ[j]).scaled(Rational(2));
            out[idx++] = std::move(e);
        }
    return out;
}

KTParams kt_from_compat_vec(std::span<const Rational> v) {
    Vec3<Rational> beta = {{v[6], v[7], -v[6] - v[7]}};
    Vec3<Rational> bd = extract_bii(beta);
    std::array<Rational, kNumKtParams> p = {v[0], v[1],  v[2],  v[3],  v[4],  v[5], bd[0],
                                            bd[1], bd[2], v[8],  v[9],  v[10], v[11], v[12],
                                            v[13], v[14], v[15], v[16], v[17], v[18], v[19]};
    return kt_from_vec<Rational>(p);
}

bool is_metric_multiple(const KTParams& kt) {
    KTParams n = kt_normalized(kt);
    Rational s = n.A[0][0];
    if (s.is_zero()) return false;
    Mat3<Rational> zero = Mat3<Rational>::filled(Rational(0));
    if (!(n.B == zero && n.C == zero)) return false;
    return n.A[1][1] == s && n.A[2][2] == s && n.A[0][1].is_zero() && n.A[0][2].is_zero() &&
           n.A[1][2].is_zero();
}

/// Killing vectors preserving every member of the space (exact).
std::vector<KVParams> common_symmetry_algebra(const CompatibleSpace& space) {
    std::vector<std::array<Rational, 6>> rows;
    for (const auto& k : space.basis) {
        Mat3<Poly> L = lie_derivative_symbolic_kv(k);
        std::vector<size_t> xyz = {6, 7, 8};
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i; j < 3; ++j)
                for (auto& [mono, coef] : L[i][j].collect(xyz)) {
                    std::array<Rational, 6> row = {};
                    for (const auto& [e, c] : coef.terms())
                        for (size_t t = 0; t < 6; ++t)
                            if (e[t] == 1) row[t] = c;
                    rows.push_back(row);
                }
    }
    RatMatrix m(rows.size(), 6);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < 6; ++c) m.at(r, c) = rows[r][c];
    std::vector<KVParams> out;
    for (auto& v : nullspace(m)) {
        KVParams kv;
        kv.A = {{v[0], v[1], v[2]}};
        kv.C = {{v[3], v[4], v[5]}};
        out.push_back(kv);
    }
    return out;
}

/// Coefficient subspace {ℓ : ℒ_V (Σ ℓ_i K_i) = 0}, exact.
std::vector<std::vector<Rational>> symmetric_member_subspace(const CompatibleSpace& space,
                                                             const KVParams& v) {
    struct Key {
        size_t i, j;
        ExpVec e;
        bool operator<(const Key& o) const {
            if (i != o.i) return i < o.i;
            if (j != o.j) return j < o.j;
            return GrlexLess{}(e, o.e);
        }
    };
    std::map<Key, std::vector<Rational>> sys;
    for (size_t bi = 0; bi < space.basis.size(); ++bi) {
        Mat3<Poly> L = lie_derivative(v, space.basis[bi]);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = i; j < 3; ++j)
                for (const auto& [e, c] : L[i][j].terms()) {
                    auto& row = sys[{i, j, e}];
                    row.resize(space.basis.size(), Rational(0));
                    row[bi] = c;
                }
    }
    RatMatrix m(sys.size(), space.basis.size());
    size_t r = 0;
    for (auto& [key, row] : sys) {
        row.resize(space.basis.size(), Rational(0));
        for (size_t c = 0; c < space.basis.size(); ++c) m.at(r, c) = row[c];
        ++r;
    }
    return nullspace(m);
}

unsigned thread_budget(unsigned requested) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned n = requested ? requested : hw;
    if (const char* env = std::getenv("KILLINGWEB_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

bool essentials_close(const EssentialParams& a, const EssentialParams& b, double rel) {
    auto close = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x.has_value() != y.has_value()) return false;
        if (!x) return true;
        double s = std::max({1.0, std::abs(*x), std::abs(*y)});
        return std::abs(*x - *y) <= rel * s;
    };
    return close(a.a, b.a) && close(a.b, b.b) && close(a.c, b.c);
}

bool frames_equivalent(const SeparableChart& a, const SeparableChart& b) {
    if (a.web != b.web) return false;
    if (!essentials_close(a.essential, b.essential, 1e-6)) return false;
    // Axis up to sign, plus matching chart origin.
    Vec3<double> za = {{a.frame.lambda[0][2], a.frame.lambda[1][2], a.frame.lambda[2][2]}};
    Vec3<double> zb = {{b.frame.lambda[0][2], b.frame.lambda[1][2], b.frame.lambda[2][2]}};
    if (std::abs(dot(za, zb)) < 1.0 - 1e-6) return false;
    double dscale = 1.0;
    for (size_t i = 0; i < 3; ++i)
        dscale = std::max({dscale, std::abs(a.frame.delta[i]), std::abs(b.frame.delta[i])});
    for (size_t i = 0; i < 3; ++i)
        if (std::abs(a.frame.delta[i] - b.frame.delta[i]) > 1e-6 * dscale) return false;
    return true;
}

}  // namespace

CompatibleSpace compatibility_space(const RatFun& potential) {
    if (!potential.vars() || *potential.vars() != *xyz_vars())
        throw std::invalid_argument("compatibility_space: potential must be over {x,y,z}");
    const VarsPtr& ring = compat_ring();
    Poly P = potential.num().embed(ring, {20, 21, 22});
    Poly Q = potential.den().embed(ring, {20, 21, 22});
    auto curls = curl_numerators(generic_components(), P, Q, {20, 21, 22});

    std::vector<size_t> xyz = {20, 21, 22};
    std::vector<std::array<Rational, 20>> rows;
    for (const auto& e : curls) {
        for (auto& [mono, coef] : e.collect(xyz)) {
            std::array<Rational, 20> row = {};
            for (const auto& [exps, c] : coef.terms()) {
                size_t var = SIZE_MAX;
                for (size_t t = 0; t < 20; ++t)
                    if (exps[t] == 1) { var = t; break; }
                if (var == SIZE_MAX)
                    throw std::logic_error("compatibility_space: non-linear coefficient");
                row[var] = c;
            }
            rows.push_back(row);
        }
    }

    RatMatrix m(rows.size(), 20);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < 20; ++c) m.at(r, c) = rows[r][c];

    CompatibleSpace space;
    for (auto& v : nullspace(m)) space.basis.push_back(kt_from_compat_vec(v));
    for (size_t i = 0; i < space.basis.size(); ++i)
        if (is_metric_multiple(space.basis[i])) {
            space.metric_index = i;
            break;
        }
    return space;
}

bool compatibility_holds(const KTParams& k, const RatFun& potential) {
    Mat3<Poly> K = kt_components(k);
    auto curls = curl_numerators(K, potential.num(), potential.den(), {0, 1, 2});
    return curls[0].is_zero() && curls[1].is_zero() && curls[2].is_zero();
}

std::vector<KTParams> extract_ckts(const CompatibleSpace& space) {
    std::vector<KTParams> out;
    for (const auto& k : space.basis)
        if (has_normal_eigenvectors(k) && has_distinct_eigenvalues(k)) out.push_back(k);
    return out;
}

namespace {

Discovery classify_and_chart_verified(const KTParams& k, std::vector<Rational> coefficients,
                                      double tau_class, double tau_canon) {
    Discovery d;
    d.tensor = k;
    d.coefficients = std::move(coefficients);
    d.report = classify_web_verified(k, tau_class);
    SeparableChart local = to_canonical(d.report.aligned, d.report.web, tau_canon);
    d.chart.web = local.web;
    d.chart.essential = local.essential;
    d.chart.frame = compose(d.report.aligning_isometry, local.frame);
    return d;
}

}  // namespace

Discovery classify_and_chart(const KTParams& k, std::vector<Rational> coefficients,
                             double tau_class, double tau_canon) {
    Discovery d;
    d.tensor = k;
    d.coefficients = std::move(coefficients);
    d.report = classify_web(k, tau_class);
    SeparableChart local = to_canonical(d.report.aligned, d.report.web, tau_canon);
    d.chart.web = local.web;
    d.chart.essential = local.essential;
    d.chart.frame = compose(d.report.aligning_isometry, local.frame);
    return d;
}

std::vector<Discovery> combination_search(const CompatibleSpace& space,
                                          const CombinationPolicy& policy,
                                          const std::vector<Discovery>& existing, size_t* tried,
                                          double tau_class, double tau_canon) {
    if (tried) *tried = 0;
    if (policy.range <= 0 || space.basis.empty()) return {};

    std::vector<size_t> dims;
    for (size_t i = 0; i < space.basis.size(); ++i)
        if (!space.metric_index || *space.metric_index != i) dims.push_back(i);
    if (dims.empty()) return {};

    // Enumerate coefficient vectors normalized up to positive scale: content 1
    // and first nonzero entry positive. Skip single-term candidates (those are
    // the basis members already handled).
    const int r = policy.range;
    std::vector<std::vector<long>> candidates;
    std::vector<long> cur(dims.size(), -r);
    for (;;) {
        long g = 0;
        size_t nz = 0;
        long first = 0;
        for (long v : cur)
            if (v != 0) {
                if (++nz == 1) first = v;
                g = std::gcd(g, std::abs(v));
            }
        if (nz >= 2 && first > 0 && g == 1) candidates.push_back(cur);
        size_t i = 0;
        while (i < cur.size() && cur[i] == r) cur[i++] = -r;
        if (i == cur.size()) break;
        ++cur[i];
    }
    if (tried) *tried = candidates.size();

    std::vector<std::optional<Discovery>> results(candidates.size());
    auto worker = [&](size_t begin, size_t end) {
        for (size_t idx = begin; idx < end; ++idx) {
            const auto& coefs = candidates[idx];
            KTParams k = KTParams::zero();
            for (size_t d = 0; d < dims.size(); ++d) {
                if (coefs[d] == 0) continue;
                auto v = kt_to_vec(space.basis[dims[d]]);
                auto kv = kt_to_vec(k);
                for (size_t t = 0; t < kNumKtParams; ++t)
                    kv[t] += Rational(coefs[d]) * v[t];
                k = kt_from_vec<Rational>(kv);
            }
            if (!has_normal_eigenvectors(k) || !has_distinct_eigenvalues(k)) continue;
            std::vector<Rational> full(space.basis.size(), Rational(0));
            for (size_t d = 0; d < dims.size(); ++d) full[dims[d]] = Rational(coefs[d]);
            try {
                results[idx] =
                    classify_and_chart_verified(k, std::move(full), tau_class, tau_canon);
            } catch (const std::domain_error&) {
                // Near-degenerate combination; skip it.
            }
        }
    };

    unsigned nthreads = thread_budget(policy.max_threads);
    if (nthreads <= 1 || candidates.size() < 16) {
        worker(0, candidates.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (candidates.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            size_t b = t * chunk, e = std::min(candidates.size(), b + chunk);
            if (b >= e) break;
            pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Discovery> found;
    auto duplicate = [&](const Discovery& d) {
        for (const auto& e : existing)
            if (frames_equivalent(d.chart, e.chart)) return true;
        for (const auto& e : found)
            if (frames_equivalent(d.chart, e.chart)) return true;
        return false;
    };
    for (auto& r2 : results)
        if (r2 && !duplicate(*r2)) found.push_back(std::move(*r2));

    // Second stage: symmetry-guided refinement. When the whole space shares a
    // rotational Killing vector, the members admitting a translational Killing
    // vector along its axis form a linear subspace of the coefficient space.
    // Interesting members there (e.g. a cylindrical web of a family with only
    // rotational symmetry) need not have small integer coordinates in the
    // space's own basis, so the grid runs inside that subspace instead.
    for (const auto& common : common_symmetry_algebra(space)) {
        if (common.is_zero()) continue;
        if (classify_kv(common).kind != KvKind::ROTATIONAL) continue;
        KVParams axis_translation;
        axis_translation.A = common.C;
        axis_translation.C = {{Rational(0), Rational(0), Rational(0)}};
        auto sub = symmetric_member_subspace(space, axis_translation);

        std::vector<size_t> sdims;
        for (size_t j = 0; j < sub.size(); ++j) {
            KTParams kt = KTParams::zero();
            auto acc = kt_to_vec(kt);
            for (size_t i = 0; i < space.basis.size(); ++i) {
                if (sub[j][i].is_zero()) continue;
                auto bv = kt_to_vec(space.basis[i]);
                for (size_t t = 0; t < kNumKtParams; ++t) acc[t] += sub[j][i] * bv[t];
            }
            if (!is_metric_multiple(kt_from_vec<Rational>(acc))) sdims.push_back(j);
        }
        if (sdims.empty() || sdims.size() > 6) continue;
        double grid = std::pow(2.0 * r + 1.0, static_cast<double>(sdims.size()));
        if (grid > 1e5) continue;

        std::vector<long> sc(sdims.size(), -r);
        for (;;) {
            long g = 0;
            size_t nz = 0;
            long first = 0;
            for (long v : sc)
                if (v != 0) {
                    if (++nz == 1) first = v;
                    g = std::gcd(g, std::abs(v));
                }
            if (nz >= 1 && first > 0 && g == 1) {
                if (tried) ++*tried;
                std::vector<Rational> coefs(space.basis.size(), Rational(0));
                for (size_t j = 0; j < sdims.size(); ++j)
                    for (size_t i = 0; i < space.basis.size(); ++i)
                        coefs[i] += Rational(sc[j]) * sub[sdims[j]][i];
                auto acc = kt_to_vec(KTParams::zero());
                for (size_t i = 0; i < space.basis.size(); ++i) {
                    if (coefs[i].is_zero()) continue;
                    auto bv = kt_to_vec(space.basis[i]);
                    for (size_t t = 0; t < kNumKtParams; ++t) acc[t] += coefs[i] * bv[t];
                }
                KTParams k = kt_from_vec<Rational>(acc);
                if (has_normal_eigenvectors(k) && has_distinct_eigenvalues(k)) {
                    try {
                        Discovery d =
                            classify_and_chart_verified(k, coefs, tau_class, tau_canon);
                        if (!duplicate(d)) found.push_back(std::move(d));
                    } catch (const std::domain_error&) {
                    }
                }
            }
            size_t i = 0;
            while (i < sc.size() && sc[i] == r) sc[i++] = -r;
            if (i == sc.size()) break;
            ++sc[i];
        }
    }
    return found;
}

SeparabilityReport find_separable_webs(const RatFun& potential, const CombinationPolicy& policy,
                                       double tau_class, double tau_canon) {
    SeparabilityReport rep;
    rep.potential = potential.to_string();
    rep.space = compatibility_space(potential);

    for (size_t i = 0; i < rep.space.basis.size(); ++i) {
        const KTParams& k = rep.space.basis[i];
        if (!has_normal_eigenvectors(k) || !has_distinct_eigenvalues(k)) continue;
        std::vector<Rational> coefs(rep.space.basis.size(), Rational(0));
        coefs[i] = Rational(1);
        rep.ckts.push_back(classify_and_chart_verified(k, std::move(coefs), tau_class, tau_canon));
    }

    auto combos = combination_search(rep.space, policy, rep.ckts, &rep.combinations_tried,
                                     tau_class, tau_canon);
    for (auto& d : combos) rep.ckts.push_back(std::move(d));

    for (const auto& d : rep.ckts) {
        if (!compatibility_holds(d.tensor, potential))
            throw std::logic_error("find_separable_webs: discovered tensor fails the exact "
                                   "compatibility re-check");
        KTParamsD kd = to_double(d.tensor);
        double bound = 1e-8 * std::max(1.0, kt_scale(kd));
        for (double t : {0.25, 0.55, 0.85}) {
            Vec3<double> u = chart_interior_point(d.chart, {{t, 1.0 - 0.7 * t, 0.3 + 0.5 * t}});
            if (chart_pushforward_check(kd, d.chart, u) > bound)
                throw std::domain_error("find_separable_webs: chart fails to diagonalize the "
                                        "tensor at an interior sample point");
        }
        rep.distinct_webs.insert(d.chart.web);
    }
    return rep;
}

}  // namespace kw
