#include "lsattack/harness/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsattack/harness/idx_io.hpp"
#include "lsattack/harness/model_io.hpp"
#include "lsattack/kernels.hpp"
#include "lsattack/rng.hpp"

namespace lsattack::harness {

const char* baseline_name(BaselineKind k) {
  switch (k) {
    case BaselineKind::random_sign:
      return "random-sign";
    case BaselineKind::fgsm:
      return "fgsm";
    case BaselineKind::pgd:
      return "pgd";
  }
  return "?";
}

BaselineKind baseline_from_name(const std::string& name) {
  if (name == "random-sign") return BaselineKind::random_sign;
  if (name == "fgsm") return BaselineKind::fgsm;
  if (name == "pgd") return BaselineKind::pgd;
  throw std::invalid_argument("unknown baseline: " + name);
}

Histogram Histogram::make(double eps) {
  Histogram h;
  h.epsilon = eps;
  h.counts.assign(17, 0);
  return h;
}

// 17 uniform bins of width eps/8 spanning [-17eps/16, +17eps/16]; the
// extreme bins are centered on -eps and +eps.
double Histogram::bin_lo(std::size_t i) const {
  return -17.0 * epsilon / 16.0 + static_cast<double>(i) * epsilon / 8.0;
}
double Histogram::bin_hi(std::size_t i) const { return bin_lo(i + 1); }

void Histogram::add(const std::vector<double>& x_adv,
                    const std::vector<double>& x) {
  if (x_adv.size() != x.size()) throw std::invalid_argument("shape mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = x_adv[i] - x[i];
    double pos = (v + 17.0 * epsilon / 16.0) / (epsilon / 8.0);
    auto bin = static_cast<long>(std::floor(pos));
    bin = std::clamp(bin, 0L, static_cast<long>(counts.size()) - 1L);
    ++counts[static_cast<std::size_t>(bin)];
  }
}

void Histogram::merge(const Histogram& other) {
  if (other.counts.size() != counts.size() || other.epsilon != epsilon)
    throw std::invalid_argument("histogram shape mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

namespace {

struct PoolEntry {
  int image_id;
  const std::vector<double>* pixels;
  int label;
};

models::LabeledDataset load_data(const CampaignConfig& cfg) {
  if (cfg.use_idx_data())
    return load_idx_dataset(cfg.images_path, cfg.labels_path);
  ImageSpec spec{cfg.synthetic.height, cfg.synthetic.width, 1, 0.0, 1.0};
  return models::gen_synthetic(cfg.synthetic.classes, spec,
                               cfg.synthetic.count, cfg.synthetic.seed,
                               cfg.synthetic.sigma);
}

// First image_count initially-correctly-classified images, in dataset order.
std::vector<PoolEntry> build_pool(const models::FeedForwardNet& net,
                                  const models::LabeledDataset& data,
                                  int image_count) {
  std::vector<PoolEntry> pool;
  for (std::size_t i = 0;
       i < data.size() && pool.size() < static_cast<std::size_t>(image_count);
       ++i) {
    if (models::predict(net, data.images[i]) == data.labels[i])
      pool.push_back({static_cast<int>(i), &data.images[i], data.labels[i]});
  }
  return pool;
}

int pick_target(int classes, int label, std::uint64_t seed, int image_id) {
  auto eng = rng::derive(seed, static_cast<std::uint64_t>(image_id));
  int t = static_cast<int>(rng::uniform_index(
      eng, static_cast<std::uint64_t>(classes - 1)));
  return t >= label ? t + 1 : t;
}

}  // namespace

CampaignSummary summarize(std::vector<ImageRecord> records, double epsilon) {
  CampaignSummary s;
  s.noise = Histogram::make(epsilon);
  std::sort(records.begin(), records.end(),
            [](const ImageRecord& a, const ImageRecord& b) {
              return a.image_id < b.image_id;
            });
  s.pool_size = records.size();
  std::vector<std::uint64_t> success_queries;
  for (const auto& r : records) {
    if (r.success) success_queries.push_back(r.queries);
    if (r.failed_at_budget) ++s.failed_at_budget;
  }
  s.successes = success_queries.size();
  s.success_rate =
      s.pool_size ? static_cast<double>(s.successes) / s.pool_size : 0.0;
  if (!success_queries.empty()) {
    std::sort(success_queries.begin(), success_queries.end());
    double sum = 0.0;
    for (auto q : success_queries) sum += static_cast<double>(q);
    s.avg_queries = sum / static_cast<double>(success_queries.size());
    std::size_t m = success_queries.size();
    s.median_queries =
        m % 2 == 1 ? static_cast<double>(success_queries[m / 2])
                   : (static_cast<double>(success_queries[m / 2 - 1]) +
                      static_cast<double>(success_queries[m / 2])) /
                         2.0;
    // Cumulative success curve sampled at every success event.
    for (std::size_t i = 0; i < m; ++i) {
      s.cumulative.emplace_back(
          success_queries[i],
          static_cast<double>(i + 1) / static_cast<double>(s.pool_size));
    }
  }
  s.records = std::move(records);
  return s;
}

CampaignSummary run_attack_campaign(const CampaignConfig& cfg) {
  models::FeedForwardNet net = load_model(cfg.model_path);
  models::LabeledDataset data = load_data(cfg);
  auto pool = build_pool(net, data, cfg.image_count);

  Histogram noise = Histogram::make(cfg.epsilon);
  std::vector<ImageRecord> records;
  records.reserve(pool.size());
  for (const auto& entry : pool) {
    int oracle_label = entry.label;
    ImageRecord rec;
    rec.image_id = entry.image_id;
    rec.label = entry.label;
    if (cfg.mode == oracle::Mode::targeted) {
      rec.target = pick_target(static_cast<int>(net.num_classes()), entry.label,
                               cfg.seed, entry.image_id);
      oracle_label = rec.target;
    }
    oracle::AttackObjective obj(net, cfg.mode, oracle_label, cfg.max_queries);
    Image x{data.spec, *entry.pixels};
    blocks::AttackResult result =
        blocks::hierarchical_attack(obj, x, cfg.attack_config());
    if (result.setfn_evals != result.queries)
      throw std::logic_error("query ledger and evaluation counts disagree");
    rec.success = result.success;
    rec.queries = result.queries;
    rec.final_f = result.final_value;
    rec.vertex_fraction =
        models::vertex_fraction(result.adversarial.data, x.data, cfg.epsilon);
    rec.failed_at_budget = !result.success && result.queries >= cfg.max_queries;
    noise.add(result.adversarial.data, x.data);
    records.push_back(rec);
  }
  CampaignSummary s = summarize(std::move(records), cfg.epsilon);
  s.noise = noise;
  return s;
}

namespace {

ImageRecord run_random_sign(const models::FeedForwardNet& net,
                            const CampaignConfig& cfg, const PoolEntry& entry,
                            const ImageSpec& spec, int oracle_label,
                            Histogram& noise) {
  ImageRecord rec;
  rec.image_id = entry.image_id;
  rec.label = entry.label;
  oracle::AttackObjective obj(net, cfg.mode, oracle_label, cfg.max_queries);
  auto eng = rng::derive(cfg.seed, static_cast<std::uint64_t>(entry.image_id));
  const std::size_t dim = entry.pixels->size();
  std::vector<double> signs(dim);
  Image adv{spec, std::vector<double>(dim)};
  Image best = adv;
  bool have_best = false;
  try {
    for (;;) {
      for (auto& s : signs) s = (eng() & 1) ? 1.0 : -1.0;
      if (cfg.clip)
        kernels::signed_step_clamped(entry.pixels->data(), signs.data(),
                                     cfg.epsilon, spec.lo, spec.hi,
                                     adv.data.data(), dim);
      else
        kernels::signed_step(entry.pixels->data(), signs.data(), cfg.epsilon,
                             adv.data.data(), dim);
      double f = obj.evaluate(adv);
      if (!have_best || f > rec.final_f) {
        rec.final_f = f;
        best = adv;
        have_best = true;
      }
      if (obj.ledger().success) {
        best = adv;
        break;
      }
    }
  } catch (const oracle::BudgetExhausted&) {
  }
  rec.success = obj.ledger().success;
  rec.queries = obj.ledger().count;
  rec.failed_at_budget = !rec.success;
  if (have_best) {
    rec.vertex_fraction =
        models::vertex_fraction(best.data, *entry.pixels, cfg.epsilon);
    noise.add(best.data, *entry.pixels);
  }
  return rec;
}

ImageRecord run_white_box(const models::FeedForwardNet& net,
                          const CampaignConfig& cfg, const PoolEntry& entry,
                          BaselineKind kind, int oracle_label,
                          Histogram& noise) {
  ImageRecord rec;
  rec.image_id = entry.image_id;
  rec.label = entry.label;
  rec.white_box = true;
  const bool targeted = cfg.mode == oracle::Mode::targeted;
  const ImageSpec& spec = *&cfg ? ImageSpec{} : ImageSpec{};  // unused
  (void)spec;
  std::vector<double> adv;
  if (kind == BaselineKind::fgsm) {
    if (targeted) {
      adv = models::pgd(net, *entry.pixels, oracle_label, cfg.epsilon, 1,
                        cfg.epsilon, true, cfg.clip);
    } else {
      adv = models::fgsm(net, *entry.pixels, oracle_label, cfg.epsilon,
                         cfg.clip);
    }
    rec.queries = 1;
  } else {
    double step =
        cfg.pgd_step_size > 0 ? cfg.pgd_step_size : cfg.epsilon / 4.0;
    adv = models::pgd(net, *entry.pixels, oracle_label, cfg.epsilon,
                      cfg.pgd_steps, step, targeted, cfg.clip);
    rec.queries = static_cast<std::uint64_t>(cfg.pgd_steps);
  }
  int predicted = models::predict(net, adv);
  rec.success =
      targeted ? predicted == oracle_label : predicted != entry.label;
  rec.final_f = [&] {
    double loss = models::predict_loss(net, adv, oracle_label).loss;
    return targeted ? -loss : loss;
  }();
  rec.vertex_fraction =
      models::vertex_fraction(adv, *entry.pixels, cfg.epsilon);
  noise.add(adv, *entry.pixels);
  return rec;
}

}  // namespace

CampaignSummary run_baseline_campaign(const CampaignConfig& cfg,
                                      BaselineKind kind) {
  models::FeedForwardNet net = load_model(cfg.model_path);
  models::LabeledDataset data = load_data(cfg);
  auto pool = build_pool(net, data, cfg.image_count);

  Histogram noise = Histogram::make(cfg.epsilon);
  std::vector<ImageRecord> records;
  records.reserve(pool.size());
  for (const auto& entry : pool) {
    int oracle_label = entry.label;
    int target = -1;
    if (cfg.mode == oracle::Mode::targeted) {
      target = pick_target(static_cast<int>(net.num_classes()), entry.label,
                           cfg.seed, entry.image_id);
      oracle_label = target;
    }
    ImageRecord rec =
        kind == BaselineKind::random_sign
            ? run_random_sign(net, cfg, entry, data.spec, oracle_label, noise)
            : run_white_box(net, cfg, entry, kind, oracle_label, noise);
    rec.target = target;
    records.push_back(rec);
  }
  CampaignSummary s = summarize(std::move(records), cfg.epsilon);
  s.noise = noise;
  return s;
}

std::optional<double> reference_conditional_average(
    const std::vector<ImageRecord>& campaign,
    const std::vector<ImageRecord>& reference) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& rec : campaign) {
    for (const auto& ref : reference) {
      if (ref.image_id == rec.image_id && ref.success) {
        sum += static_cast<double>(rec.queries);
        ++n;
        break;
      }
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace lsattack::harness
