// Coarse-to-fine block attack: mini-batched lazy insert/delete rounds over
// the block ground set, splitting blocks between rounds until single-cell
// granularity.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lsattack/blocks.hpp"
#include "lsattack/oracle.hpp"

namespace lsattack::blocks {

struct AttackConfig {
  double epsilon = 0.05;
  int initial_k = 32;        // must be a power of two
  int batch_size = 64;
  std::uint64_t max_queries = 10000;
  int max_rounds = 1000;     // safety cap on outer rounds
  bool clip = true;

  void validate() const;
};

struct AttackResult {
  setfn::ElementSet final_set;
  Image adversarial;
  bool success = false;
  std::uint64_t queries = 0;
  double final_value = 0.0;
  std::vector<std::pair<std::uint64_t, double>> trajectory;
  int final_block_size = 0;
  int rounds = 0;
  std::uint64_t setfn_evals = 0;  // must equal `queries`
};

// Runs the attack until success, budget exhaustion, a full no-change pass at
// block size 1, or the round cap. On success the result holds the successful
// probe; on budget exhaustion it holds the incumbent working set, whose value
// never decreases over accepted moves.
AttackResult hierarchical_attack(oracle::AttackObjective& objective,
                                 const Image& x, const AttackConfig& cfg);

}  // namespace lsattack::blocks
