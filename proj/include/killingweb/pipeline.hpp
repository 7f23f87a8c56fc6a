#pragma once

#include "killingweb/canonical.hpp"
#include "killingweb/ratfun.hpp"

#include <set>
#include <string>
#include <vector>

namespace kw {

/// Exact solution space of the compatibility condition d(K dV) = 0 inside the
/// 20-dimensional Killing tensor space.
struct CompatibleSpace {
    std::vector<KTParams> basis;  // deterministic RREF-derived order
    std::optional<size_t> metric_index;
    size_t dimension() const { return basis.size(); }
};

CompatibleSpace compatibility_space(const RatFun& potential);

/// Basis members that are characteristic (pass TSN and the distinct-eigenvalue
/// test).
std::vector<KTParams> extract_ckts(const CompatibleSpace& space);

struct CombinationPolicy {
    int range = 2;           // integer coefficients in {-range..range}
    unsigned max_threads = 0;  // 0: hardware default, capped by KILLINGWEB_THREADS
};

struct Discovery {
    KTParams tensor;
    std::vector<Rational> coefficients;  // in the space's basis
    ClassificationReport report;
    SeparableChart chart;
};

struct SeparabilityReport {
    std::string potential;
    CompatibleSpace space;
    std::vector<Discovery> ckts;
    size_t combinations_tried = 0;
    std::set<WebClass> distinct_webs;
};

/// Classify one characteristic tensor end to end: full classification plus the
/// composed chart (classification aligner ∘ canonical-form refinement).
Discovery classify_and_chart(const KTParams& k, std::vector<Rational> coefficients,
                             double tau_class = 1e-9, double tau_canon = 1e-8);

/// Bounded integer-grid search over non-metric combinations of the basis.
/// Candidates are normalized up to positive scale; discoveries equivalent to
/// existing ones (same web, same essentials and frame up to the documented
/// discrete symmetries) are dropped. `tried` reports the candidate count.
std::vector<Discovery> combination_search(const CompatibleSpace& space,
                                          const CombinationPolicy& policy,
                                          const std::vector<Discovery>& existing,
                                          size_t* tried = nullptr, double tau_class = 1e-9,
                                          double tau_canon = 1e-8);

/// Steps 1-3 end to end: compatibility space, CKT extraction, combination
/// search, classification and charts. Every reported chart is re-verified:
/// the compatibility condition is re-checked exactly and the chart must
/// diagonalize the tensor at sampled interior points.
SeparabilityReport find_separable_webs(const RatFun& potential,
                                       const CombinationPolicy& policy = {},
                                       double tau_class = 1e-9, double tau_canon = 1e-8);

/// Exact check of d(K dV) = 0 for a fixed tensor.
bool compatibility_holds(const KTParams& k, const RatFun& potential);

}  // namespace kw
