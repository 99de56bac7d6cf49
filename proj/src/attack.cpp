#include "lsattack/attack.hpp"

#include <bit>
#include <memory>
#include <optional>
#include <stdexcept>

namespace lsattack::blocks {

void AttackConfig::validate() const {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (initial_k < 1 || !std::has_single_bit(static_cast<unsigned>(initial_k)))
    throw std::invalid_argument("initial_k must be a power of two");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
}

AttackResult hierarchical_attack(oracle::AttackObjective& objective,
                                 const Image& x, const AttackConfig& cfg) {
  cfg.validate();
  x.spec.validate();

  BlockGrid grid = build_ground_set(x.spec, default_canvas(x.spec, cfg.initial_k),
                                    cfg.initial_k);

  AttackResult res;
  // Cached F(working set); stays valid across splits because splitting does
  // not change the assembled image.
  std::optional<double> value;
  std::unique_ptr<oracle::BlockObjective> f;

  auto fresh_objective = [&]() {
    if (f) res.setfn_evals += f->eval_count();
    f = std::make_unique<oracle::BlockObjective>(
        objective, x, grid, cfg.epsilon, cfg.clip,
        oracle::BlockObjective::Options{.stop_on_success = true});
  };

  bool succeeded = false;
  try {
    for (int round = 0; round < cfg.max_rounds; ++round) {
      res.rounds = round + 1;
      fresh_objective();
      setfn::PhaseStats pass;
      for (const BatchSlice& slice :
           partition_minibatches(grid.ground_set(), cfg.batch_size)) {
        auto ids = slice.ids();
        pass += setfn::lazy_greedy_insert_inplace(*f, grid.working(), ids, value);
        pass += setfn::lazy_greedy_delete_inplace(*f, grid.working(), ids, value);
      }
      if (grid.block_size() > 1) {
        grid = split_blocks(grid);
      } else if (!pass.changed()) {
        break;
      }
    }
  } catch (const oracle::SuccessDetected&) {
    succeeded = true;
  } catch (const oracle::BudgetExhausted&) {
    // Keep the incumbent working set.
  }

  const auto& ledger = objective.ledger();
  if (f) res.setfn_evals += f->eval_count();
  res.success = succeeded;
  res.queries = ledger.count;
  res.trajectory = ledger.trajectory;
  res.final_block_size = grid.block_size();
  if (succeeded) {
    res.final_set = f->last_set();
    res.adversarial = f->last_image();
    res.final_value = ledger.trajectory.back().second;
  } else {
    res.final_set = grid.working();
    res.adversarial =
        assemble_perturbation(x, grid, grid.working(), cfg.epsilon, cfg.clip);
    res.final_value = value.value_or(0.0);
  }
  return res;
}

}  // namespace lsattack::blocks
