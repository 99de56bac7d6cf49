// Exhaustive verification of the approximation theory on small ground sets:
// brute-force optima, the diminishing-returns check with witnesses, the
// submodularity index, and machine checks of the local-search guarantee and
// its supporting inequalities.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "lsattack/setfn.hpp"

namespace lsattack::analysis {

inline constexpr double kInequalityTol = 1e-9;

// Visits each of the 2^n subset masks exactly once, in binary counting order.
// Guarded to n <= 20.
void for_each_subset(std::size_t n,
                     const std::function<void(std::uint64_t)>& visit);

// All 2^n values of F, indexed by membership mask. Building it consumes
// exactly 2^n evals.
class ValueTable {
 public:
  ValueTable(setfn::SetFunction& f, const setfn::GroundSet& v);

  std::size_t ground_size() const { return n_; }
  std::uint64_t full_mask() const {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }
  double operator[](std::uint64_t mask) const { return values_[mask]; }
  double min_value() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Global maximizer over all subsets, ties to the smallest mask. |V| <= 20.
struct Optimum {
  setfn::ElementSet set;
  double value;
};
Optimum brute_force_optimum(setfn::SetFunction& f, const setfn::GroundSet& v);

struct SubmodularityWitness {
  setfn::ElementSet a;
  setfn::ElementSet b;  // a is a subset of b
  int e;                // e outside b
  double gain_at_a;
  double gain_at_b;  // violation: gain_at_a < gain_at_b
};

// First violating triple (A, B, e) in (B mask, A mask, e) order, or nullopt
// when F has diminishing returns everywhere. |V| <= 12.
std::optional<SubmodularityWitness> find_submodularity_violation(
    setfn::SetFunction& f, const setfn::GroundSet& v);

inline bool is_submodular(setfn::SetFunction& f, const setfn::GroundSet& v) {
  return !find_submodularity_violation(f, v).has_value();
}

// Submodularity index lambda_F(L, k): minimum of
//   phi(S, A) = sum_{x in S} [F(A u {x}) - F(A)] - [F(A u S) - F(A)]
// over A subset of L and S subset of V with S disjoint from A and |S| <= k.
// Pairs with |S| <= 1 contribute zero, so the index is never positive.
double submodularity_index(setfn::SetFunction& f, const setfn::GroundSet& v,
                           const setfn::ElementSet& l, int k);
double submodularity_index(setfn::SetFunction& f, const setfn::GroundSet& v,
                           int k);

// Table-backed variants for callers that already paid for enumeration.
double submodularity_index(const ValueTable& t, std::uint64_t l_mask, int k);

// Count factor of the approximation bound:
// C(|S\C|,2) + C(|C\S|,2) + |outside(S u C)| * |S| + |C\S| * |S n C|.
std::uint64_t xi(const setfn::ElementSet& s, const setfn::ElementSet& c,
                 const setfn::GroundSet& v);

// Bound check for the local-search guarantee
//   2 F(S) + F(V\S) >= F(C) + xi * lambda_F(V, 2)
// on the non-negative shift of F. S comes from naive local search run to
// convergence from the empty set; C is the brute-force optimum. |V| <= 10.
struct TheoremReport {
  setfn::ElementSet local_solution;   // S
  setfn::ElementSet optimal_solution; // C
  double f_local = 0.0;               // F(S), after offset
  double f_complement = 0.0;          // F(V\S)
  double f_optimal = 0.0;             // F(C)
  double offset = 0.0;                // added to make F non-negative
  double lambda = 0.0;                // lambda_F(V, 2)
  std::uint64_t xi = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};
TheoremReport check_theorem1(setfn::SetFunction& f, const setfn::GroundSet& v);

// Exhaustive check of the three supporting inequalities plus the stated
// index properties (monotonicity in L, range at the optimum). |V| <= 8.
struct LemmaReport {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  double worst_slack = 0.0;  // most negative lhs-rhs seen
  bool ok() const { return violations == 0; }
};
struct AppendixReport {
  LemmaReport chain_bound;      // F_x(A) - F_x(B) >= |B\A| * lambda(B, 2)
  LemmaReport union_bound;      // F(A u Y) - F(A) >= F(B u Y) - F(B) + ...
  LemmaReport local_opt_bound;  // bounds at every local optimum
  LemmaReport index_monotone;   // lambda(I, k) >= lambda(J, k) for I in J
  LemmaReport index_range;      // -2 F(C) <= lambda(V, 2) <= 2 F(C), F >= 0
  bool ok() const {
    return chain_bound.ok() && union_bound.ok() && local_opt_bound.ok() &&
           index_monotone.ok() && index_range.ok();
  }
};
AppendixReport check_appendix_lemmas(setfn::SetFunction& f,
                                     const setfn::GroundSet& v);

// max(F(S), F(V\S)) >= (F(C) + xi * lambda) / 3, gated on the bound's
// precondition F(C) + xi * lambda >= 0.
enum class CorollaryVerdict { holds, violated, skipped };
CorollaryVerdict check_corollary1(setfn::SetFunction& f,
                                  const setfn::GroundSet& v);

}  // namespace lsattack::analysis
