#include "lsattack/analysis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lsattack::analysis {
namespace {

void check_size(const setfn::GroundSet& v, std::size_t limit,
                const char* what) {
  if (v.size > limit)
    throw std::invalid_argument(std::string(what) +
                                ": ground set too large for enumeration");
}

std::uint64_t choose2(std::uint64_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

// Explicit-value function over masks; used internally so the theorem checks
// can run the search algorithms on the offset function without re-querying F.
class TableBackedFunction final : public setfn::SetFunction {
 public:
  TableBackedFunction(const ValueTable& t, double offset)
      : table_(t), offset_(offset) {}

 private:
  double eval_impl(const setfn::ElementSet& s) override {
    return table_[s.to_mask()] + offset_;
  }

  const ValueTable& table_;
  double offset_;
};

}  // namespace

void for_each_subset(std::size_t n,
                     const std::function<void(std::uint64_t)>& visit) {
  if (n > 20)
    throw std::invalid_argument("subset enumeration limited to 20 elements");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) visit(mask);
}

ValueTable::ValueTable(setfn::SetFunction& f, const setfn::GroundSet& v)
    : n_(v.size) {
  check_size(v, 20, "value table");
  values_.resize(std::size_t{1} << n_);
  for_each_subset(n_, [&](std::uint64_t mask) {
    values_[mask] = f.eval(setfn::ElementSet::from_mask(n_, mask));
  });
}

double ValueTable::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

Optimum brute_force_optimum(setfn::SetFunction& f, const setfn::GroundSet& v) {
  check_size(v, 20, "brute force optimum");
  std::uint64_t best_mask = 0;
  double best_value = f.eval(setfn::ElementSet(v.size));
  const std::uint64_t count = std::uint64_t{1} << v.size;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    double value = f.eval(setfn::ElementSet::from_mask(v.size, mask));
    if (value > best_value) {
      best_value = value;
      best_mask = mask;
    }
  }
  return {setfn::ElementSet::from_mask(v.size, best_mask), best_value};
}

std::optional<SubmodularityWitness> find_submodularity_violation(
    setfn::SetFunction& f, const setfn::GroundSet& v) {
  check_size(v, 12, "submodularity check");
  ValueTable t(f, v);
  const std::size_t n = v.size;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t b = 0; b < count; ++b) {
    for (std::uint64_t a = 0; a <= b; ++a) {
      if ((a & b) != a) continue;  // a must be a subset of b
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (b & bit) continue;
        double gain_a = t[a | bit] - t[a];
        double gain_b = t[b | bit] - t[b];
        if (gain_a < gain_b - kInequalityTol) {
          return SubmodularityWitness{setfn::ElementSet::from_mask(n, a),
                                      setfn::ElementSet::from_mask(n, b),
                                      static_cast<int>(i), gain_a, gain_b};
        }
      }
    }
  }
  return std::nullopt;
}

double submodularity_index(const ValueTable& t, std::uint64_t l_mask, int k) {
  const std::size_t n = t.ground_size();
  const std::uint64_t count = std::uint64_t{1} << n;
  double best = 0.0;  // |S| <= 1 pairs contribute exactly zero
  // Iterate subsets A of L via the submask walk, including the empty set.
  std::uint64_t a = l_mask;
  for (;;) {
    for (std::uint64_t s = 0; s < count; ++s) {
      if (s & a) continue;
      int size = std::popcount(s);
      if (size < 2 || size > k) continue;
      double phi = -(t[a | s] - t[a]);
      std::uint64_t rest = s;
      while (rest) {
        std::uint64_t bit = rest & (~rest + 1);
        phi += t[a | bit] - t[a];
        rest &= rest - 1;
      }
      best = std::min(best, phi);
    }
    if (a == 0) break;
    a = (a - 1) & l_mask;
  }
  return best;
}

double submodularity_index(setfn::SetFunction& f, const setfn::GroundSet& v,
                           const setfn::ElementSet& l, int k) {
  check_size(v, 12, "submodularity index");
  if (l.ground_size() != v.size)
    throw std::invalid_argument("index set does not match ground set");
  ValueTable t(f, v);
  return submodularity_index(t, l.to_mask(), k);
}

double submodularity_index(setfn::SetFunction& f, const setfn::GroundSet& v,
                           int k) {
  return submodularity_index(f, v, setfn::ElementSet::full(v.size), k);
}

std::uint64_t xi(const setfn::ElementSet& s, const setfn::ElementSet& c,
                 const setfn::GroundSet& v) {
  if (s.ground_size() != v.size || c.ground_size() != v.size)
    throw std::invalid_argument("sets must share the ground set");
  std::uint64_t s_minus_c = 0, c_minus_s = 0, both = 0;
  for (std::size_t i = 0; i < v.size; ++i) {
    int e = static_cast<int>(i);
    bool in_s = s.contains(e), in_c = c.contains(e);
    s_minus_c += in_s && !in_c;
    c_minus_s += !in_s && in_c;
    both += in_s && in_c;
  }
  std::uint64_t outside = v.size - (s_minus_c + c_minus_s + both);
  return choose2(s_minus_c) + choose2(c_minus_s) + outside * s.size() +
         c_minus_s * both;
}

TheoremReport check_theorem1(setfn::SetFunction& f, const setfn::GroundSet& v) {
  check_size(v, 10, "theorem check");
  ValueTable t(f, v);
  // Non-negativity shift; gains are unchanged so the search path is the same.
  double offset = std::max(0.0, -t.min_value());
  TableBackedFunction shifted(t, offset);

  TheoremReport r;
  r.offset = offset;
  auto local =
      setfn::naive_local_search(shifted, setfn::ElementSet(v.size), v, true);
  r.local_solution = local.set;
  r.f_local = local.value;
  r.f_complement = shifted.eval(local.set.complement());

  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask <= t.full_mask(); ++mask) {
    if (t[mask] > t[best_mask]) best_mask = mask;
  }
  r.optimal_solution = setfn::ElementSet::from_mask(v.size, best_mask);
  r.f_optimal = t[best_mask] + offset;

  r.lambda = submodularity_index(t, t.full_mask(), 2);
  r.xi = xi(r.local_solution, r.optimal_solution, v);
  r.lhs = 2.0 * r.f_local + r.f_complement;
  r.rhs = r.f_optimal + static_cast<double>(r.xi) * r.lambda;
  r.holds = r.lhs >= r.rhs - kInequalityTol;
  return r;
}

namespace {

void record(LemmaReport& rep, double lhs, double rhs) {
  ++rep.checks;
  double slack = lhs - rhs;
  rep.worst_slack = std::min(rep.worst_slack, slack);
  if (slack < -kInequalityTol) ++rep.violations;
}

}  // namespace

AppendixReport check_appendix_lemmas(setfn::SetFunction& f,
                                     const setfn::GroundSet& v) {
  check_size(v, 8, "appendix lemma check");
  ValueTable t(f, v);
  const std::size_t n = v.size;
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t full = t.full_mask();

  // lambda_F(L, 2) for every L, reused by all the checks below.
  std::vector<double> lambda2(count);
  for (std::uint64_t l = 0; l < count; ++l)
    lambda2[l] = submodularity_index(t, l, 2);

  AppendixReport rep;

  // Chain bound: for A subset of B and x outside B,
  //   [F(A u x) - F(A)] - [F(B u x) - F(B)] >= |B\A| * lambda(B, 2).
  for (std::uint64_t b = 0; b < count; ++b) {
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      int m = std::popcount(b ^ a);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (b & bit) continue;
        double lhs = (t[a | bit] - t[a]) - (t[b | bit] - t[b]);
        record(rep.chain_bound, lhs, m * lambda2[b]);
      }
      if (a == 0) break;
    }
  }

  // Union bound: for A subset of B and any Y,
  //   F(A u Y) - F(A) >= F(B u Y) - F(B) + |B\A| |Y| lambda(B u Y, 2).
  for (std::uint64_t b = 0; b < count; ++b) {
    for (std::uint64_t a = b;; a = (a - 1) & b) {
      int m = std::popcount(b ^ a);
      for (std::uint64_t y = 0; y < count; ++y) {
        double lhs = t[a | y] - t[a];
        double rhs = t[b | y] - t[b] +
                     static_cast<double>(m) * std::popcount(y) * lambda2[b | y];
        record(rep.union_bound, lhs, rhs);
      }
      if (a == 0) break;
    }
  }

  // Local-optimum bounds: for every local optimum S, every I inside and J
  // outside chain position satisfies
  //   F(I) <= F(S) - C(|S\I|, 2) lambda(S, 2)
  //   F(J) <= F(S) - C(|J\S|, 2) lambda(J, 2).
  for (std::uint64_t s = 0; s < count; ++s) {
    bool local_opt = true;
    for (std::size_t i = 0; i < n && local_opt; ++i) {
      if (t[s ^ (std::uint64_t{1} << i)] > t[s]) local_opt = false;
    }
    if (!local_opt) continue;
    for (std::uint64_t i = s;; i = (i - 1) & s) {
      double bound =
          t[s] - static_cast<double>(choose2(std::popcount(s ^ i))) * lambda2[s];
      record(rep.local_opt_bound, bound, t[i]);
      if (i == 0) break;
    }
    const std::uint64_t outside = full ^ s;
    for (std::uint64_t extra = outside;; extra = (extra - 1) & outside) {
      std::uint64_t j = s | extra;
      double bound =
          t[s] - static_cast<double>(choose2(std::popcount(extra))) * lambda2[j];
      record(rep.local_opt_bound, bound, t[j]);
      if (extra == 0) break;
    }
  }

  // Index monotonicity: lambda(I, k) >= lambda(J, k) whenever I subset of J.
  for (std::uint64_t j = 0; j < count; ++j) {
    for (std::uint64_t i = j;; i = (i - 1) & j) {
      record(rep.index_monotone, lambda2[i], lambda2[j]);
      if (i == 0) break;
    }
  }

  // Range at the optimum for the non-negative shift of F.
  {
    double offset = std::max(0.0, -t.min_value());
    double best = t[0];
    for (std::uint64_t mask = 1; mask < count; ++mask)
      best = std::max(best, t[mask]);
    double f_c = best + offset;
    // The shift leaves every phi term unchanged, so lambda is lambda2[full].
    record(rep.index_range, lambda2[full], -2.0 * f_c);
    record(rep.index_range, 2.0 * f_c, lambda2[full]);
  }

  return rep;
}

CorollaryVerdict check_corollary1(setfn::SetFunction& f,
                                  const setfn::GroundSet& v) {
  TheoremReport r = check_theorem1(f, v);
  if (r.rhs < 0.0) return CorollaryVerdict::skipped;
  double best_side = std::max(r.f_local, r.f_complement);
  return best_side >= r.rhs / 3.0 - kInequalityTol ? CorollaryVerdict::holds
                                                   : CorollaryVerdict::violated;
}

}  // namespace lsattack::analysis
