// Experiment harness: attack campaigns over image pools, baselines, and
// metric aggregation. Only initially-correctly-classified images enter the
// pool; averages and medians are computed over successful attacks only.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsattack/attack.hpp"
#include "lsattack/models.hpp"
#include "lsattack/oracle.hpp"

namespace lsattack::harness {

struct SyntheticSpec {
  int classes = 10;
  int height = 28;
  int width = 28;
  int count = 400;
  std::uint64_t seed = 1;
  double sigma = 0.1;
};

struct CampaignConfig {
  oracle::Mode mode = oracle::Mode::untargeted;
  double epsilon = 0.3;
  int initial_k = 4;
  int batch_size = 64;
  std::uint64_t max_queries = 20000;
  int max_rounds = 1000;
  bool clip = true;
  std::uint64_t seed = 1;

  std::string model_path;

  // Dataset source: IDX files when paths are set, otherwise the synthetic
  // spec.
  std::string images_path;
  std::string labels_path;
  SyntheticSpec synthetic;

  int image_count = 100;  // pool size target

  // White-box baseline parameters.
  int pgd_steps = 20;
  double pgd_step_size = 0.0;  // 0 -> epsilon / 4

  bool use_idx_data() const { return !images_path.empty(); }
  blocks::AttackConfig attack_config() const {
    return {epsilon, initial_k, batch_size, max_queries, max_rounds, clip};
  }
};

enum class BaselineKind { random_sign, fgsm, pgd };

const char* baseline_name(BaselineKind k);
BaselineKind baseline_from_name(const std::string& name);

struct ImageRecord {
  int image_id = 0;       // index into the source dataset
  int label = 0;
  int target = -1;        // targeted mode only
  bool success = false;
  std::uint64_t queries = 0;
  double final_f = 0.0;
  double vertex_fraction = 0.0;
  bool failed_at_budget = false;
  bool white_box = false;
};

struct Histogram {
  double epsilon = 0.0;
  std::vector<std::uint64_t> counts;  // 17 bins over [-17eps/16, +17eps/16]

  static Histogram make(double eps);
  void add(const std::vector<double>& x_adv, const std::vector<double>& x);
  void merge(const Histogram& other);
  std::uint64_t total() const;
  double bin_lo(std::size_t i) const;
  double bin_hi(std::size_t i) const;
};

struct CampaignSummary {
  std::size_t pool_size = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double avg_queries = 0.0;     // over successes; 0 when none
  double median_queries = 0.0;  // over successes; 0 when none
  std::size_t failed_at_budget = 0;
  std::optional<double> avg_queries_on_reference_success;
  std::vector<ImageRecord> records;
  // Success-rate curve sampled at every success event: (queries, rate).
  std::vector<std::pair<std::uint64_t, double>> cumulative;
  Histogram noise;
};

// Recomputes the aggregate metrics of a record list (used both after a run
// and when re-reading CSVs in the report command).
CampaignSummary summarize(std::vector<ImageRecord> records, double epsilon);

CampaignSummary run_attack_campaign(const CampaignConfig& cfg);
CampaignSummary run_baseline_campaign(const CampaignConfig& cfg,
                                      BaselineKind kind);

// Average queries of `campaign` over the images a reference campaign fooled,
// joined by image id.
std::optional<double> reference_conditional_average(
    const std::vector<ImageRecord>& campaign,
    const std::vector<ImageRecord>& reference);

}  // namespace lsattack::harness
