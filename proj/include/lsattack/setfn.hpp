// Set-function machinery: marginal gains, lazy greedy insertion/deletion with
// a max-heap of cached upper bounds, the alternating local-search loop, and
// naive reference implementations used as test oracles.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lsattack::setfn {

// Ground set of dense element ids 0..size-1.
struct GroundSet {
  std::size_t size = 0;

  std::vector<int> all_ids() const;
};

// Subset of a ground set with ordered-set semantics. Membership queries are
// O(1); iteration visits ids in increasing order.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t ground_size);

  static ElementSet from_ids(std::size_t ground_size,
                             std::span<const int> ids);
  static ElementSet from_ids(std::size_t ground_size,
                             std::initializer_list<int> ids);
  // Bit i of `mask` selects element i. Requires ground_size <= 64.
  static ElementSet from_mask(std::size_t ground_size, std::uint64_t mask);
  static ElementSet full(std::size_t ground_size);

  std::size_t ground_size() const { return member_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(int id) const;
  void insert(int id);  // throws std::invalid_argument if already present
  void erase(int id);   // throws std::invalid_argument if absent

  ElementSet with(int id) const;
  ElementSet without(int id) const;
  ElementSet complement() const;

  std::vector<int> ids() const;
  std::uint64_t to_mask() const;  // requires ground_size <= 64

  bool operator==(const ElementSet& other) const = default;

 private:
  void check_id(int id) const;

  std::vector<std::uint8_t> member_;
  std::size_t count_ = 0;
};

// Evaluatable objective over subsets. eval() is the only access path and
// increments the evaluation counter exactly once per completed call.
// Implementations must be deterministic: equal sets give equal values.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  double eval(const ElementSet& s) {
    double v = eval_impl(s);
    ++evals_;
    post_eval(s, v);
    return v;
  }

  std::uint64_t eval_count() const { return evals_; }

 protected:
  virtual double eval_impl(const ElementSet& s) = 0;
  // Hook invoked after the counter is bumped; used by oracle-backed
  // functions to raise control-flow signals without losing the count.
  virtual void post_eval(const ElementSet&, double) {}

 private:
  std::uint64_t evals_ = 0;
};

struct LocalSearchConfig {
  int max_iter = 1;              // alternating insert/delete rounds
  bool return_best_side = true;  // final argmax over {S, V \ S}
};

struct PhaseStats {
  std::uint64_t evals = 0;            // oracle evaluations consumed
  std::uint64_t stale_refreshes = 0;  // heap pops that recomputed a bound
  std::uint64_t accepted = 0;         // mutations applied to the working set

  bool changed() const { return accepted > 0; }
  PhaseStats& operator+=(const PhaseStats& o) {
    evals += o.evals;
    stale_refreshes += o.stale_refreshes;
    accepted += o.accepted;
    return *this;
  }
};

struct PhaseResult {
  ElementSet set;
  double value = 0.0;  // F(set)
  PhaseStats stats;
};

// F(S u {e}) - F(S). Consumes 2 evals, or 1 when F(S) is supplied cached.
double marginal_gain(SetFunction& f, const ElementSet& s, int e,
                     std::optional<double> value_of_s = std::nullopt);

// F(S \ {e}) - F(S).
double deletion_gain(SetFunction& f, const ElementSet& s, int e,
                     std::optional<double> value_of_s = std::nullopt);

// In-place phase cores. `universe` is the span of candidate ids considered
// (insertion skips members, deletion skips non-members); mutations survive in
// `s` if an evaluation throws mid-phase. `value` carries the cached F(s)
// across phases; when empty it costs one bookkeeping eval.
PhaseStats lazy_greedy_insert_inplace(SetFunction& f, ElementSet& s,
                                      std::span<const int> universe,
                                      std::optional<double>& value);
PhaseStats lazy_greedy_delete_inplace(SetFunction& f, ElementSet& s,
                                      std::span<const int> universe,
                                      std::optional<double>& value);

PhaseResult lazy_greedy_insert(SetFunction& f, ElementSet s, const GroundSet& v,
                               std::optional<double> value_of_s = std::nullopt);
PhaseResult lazy_greedy_delete(SetFunction& f, ElementSet s,
                               std::optional<double> value_of_s = std::nullopt);

PhaseResult local_search(SetFunction& f, ElementSet s, const GroundSet& v,
                         const LocalSearchConfig& cfg,
                         std::optional<double> value_of_s = std::nullopt);

// Non-lazy reference variants: recompute every candidate gain each step and
// take the argmax (ties to the smaller id). Test oracles for the lazy path.
PhaseStats naive_greedy_insert_inplace(SetFunction& f, ElementSet& s,
                                       std::span<const int> universe,
                                       std::optional<double>& value);
PhaseStats naive_greedy_delete_inplace(SetFunction& f, ElementSet& s,
                                       std::span<const int> universe,
                                       std::optional<double>& value);
PhaseResult naive_greedy_insert(SetFunction& f, ElementSet s, const GroundSet& v,
                                std::optional<double> value_of_s = std::nullopt);

// Alternates full insert/delete passes. With until_convergence the loop runs
// until a whole pass accepts nothing, which makes the output a local optimum;
// otherwise it performs a single pass.
PhaseResult naive_local_search(SetFunction& f, ElementSet s, const GroundSet& v,
                               bool until_convergence);

// True iff no single insertion or deletion improves F(S). Consumes exactly
// |V| + 1 evals.
bool is_local_optimum(SetFunction& f, const ElementSet& s, const GroundSet& v);

}  // namespace lsattack::setfn
