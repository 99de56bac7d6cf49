// Zeroth-order attack objective: a classifier wrapped as a queryable loss
// with direction, exact query accounting, budget enforcement, and success
// detection.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsattack/blocks.hpp"
#include "lsattack/image.hpp"
#include "lsattack/models.hpp"
#include "lsattack/setfn.hpp"

namespace lsattack::oracle {

enum class Mode { untargeted, targeted };

// Raised when another query would exceed the budget. The failing query is
// not made and is not counted.
struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("query budget exhausted") {}
};

// Raised by the set-function wrapper right after a query that fooled the
// victim, so the attack stack unwinds immediately. The query is counted.
struct SuccessDetected : std::runtime_error {
  SuccessDetected() : std::runtime_error("attack succeeded") {}
};

struct QueryLedger {
  std::uint64_t count = 0;
  std::uint64_t budget = 0;
  bool success = false;  // monotone: never reverts
  std::optional<std::uint64_t> first_success_at;
  std::vector<std::pair<std::uint64_t, double>> trajectory;  // (query, f)
};

using LossReport = models::Prediction;

// f(x) = loss(x, label) for untargeted attacks, -loss(x, label) when
// targeting `label`. The victim is shared read-only; the ledger belongs to
// exactly one attack run.
class AttackObjective {
 public:
  AttackObjective(const models::FeedForwardNet& victim, Mode mode, int label,
                  std::uint64_t budget);

  // Queries the victim once: bumps the count, appends to the trajectory, and
  // latches success (untargeted: prediction != label; targeted: prediction
  // == label). Throws BudgetExhausted before querying when the budget is
  // spent.
  double evaluate(const Image& x_adv);

  const QueryLedger& ledger() const { return ledger_; }
  Mode mode() const { return mode_; }
  int label() const { return label_; }
  const models::FeedForwardNet& victim() const { return victim_; }

 private:
  const models::FeedForwardNet& victim_;
  Mode mode_;
  int label_;
  QueryLedger ledger_;
};

// The block objective as a set function: eval(S) assembles the perturbation
// for S and makes exactly one oracle query. Keeps the last probed set and
// image so a success can be recovered after the unwind.
class BlockObjective final : public setfn::SetFunction {
 public:
  struct Options {
    bool stop_on_success = false;
  };

  BlockObjective(AttackObjective& objective, const Image& x,
                 const blocks::BlockGrid& grid, double eps, bool clip,
                 Options options = {});

  const setfn::ElementSet& last_set() const { return last_set_; }
  const Image& last_image() const { return last_image_; }

 private:
  double eval_impl(const setfn::ElementSet& s) override;
  void post_eval(const setfn::ElementSet& s, double value) override;

  AttackObjective& objective_;
  const Image& x_;
  const blocks::BlockGrid& grid_;
  double eps_;
  bool clip_;
  Options options_;
  setfn::ElementSet last_set_;
  Image last_image_;
};

inline BlockObjective as_set_function(AttackObjective& objective,
                                      const Image& x,
                                      const blocks::BlockGrid& grid, double eps,
                                      bool clip,
                                      BlockObjective::Options options = {}) {
  return BlockObjective(objective, x, grid, eps, clip, options);
}

}  // namespace lsattack::oracle
