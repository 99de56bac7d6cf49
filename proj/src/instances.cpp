#include "lsattack/instances.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lsattack::instances {

ModularFunction::ModularFunction(std::vector<double> weights)
    : weights_(std::move(weights)) {}

double ModularFunction::eval_impl(const setfn::ElementSet& s) {
  if (s.ground_size() != weights_.size())
    throw std::invalid_argument("set does not match ground size");
  double total = 0.0;
  for (int e : s.ids()) total += weights_[static_cast<std::size_t>(e)];
  return total;
}

WeightedCoverageFunction::WeightedCoverageFunction(
    std::vector<std::uint64_t> covers, std::vector<double> item_weights)
    : covers_(std::move(covers)), item_weights_(std::move(item_weights)) {
  if (item_weights_.size() > 64)
    throw std::invalid_argument("at most 64 universe items supported");
}

double WeightedCoverageFunction::eval_impl(const setfn::ElementSet& s) {
  if (s.ground_size() != covers_.size())
    throw std::invalid_argument("set does not match ground size");
  std::uint64_t covered = 0;
  for (int e : s.ids()) covered |= covers_[static_cast<std::size_t>(e)];
  double total = 0.0;
  while (covered) {
    int item = std::countr_zero(covered);
    total += item_weights_[static_cast<std::size_t>(item)];
    covered &= covered - 1;
  }
  return total;
}

TableFunction::TableFunction(std::size_t ground_size,
                             std::vector<double> values)
    : n_(ground_size), values_(std::move(values)) {
  if (n_ > 20) throw std::invalid_argument("table ground size limited to 20");
  if (values_.size() != (std::size_t{1} << n_))
    throw std::invalid_argument("table must hold 2^n values");
}

double TableFunction::eval_impl(const setfn::ElementSet& s) {
  if (s.ground_size() != n_)
    throw std::invalid_argument("set does not match ground size");
  return values_[s.to_mask()];
}

LogisticVertexFunction::LogisticVertexFunction(std::vector<double> w,
                                               std::vector<double> x0,
                                               double eps)
    : w_(std::move(w)), x0_(std::move(x0)), eps_(eps) {
  if (w_.size() != x0_.size())
    throw std::invalid_argument("weight/point dimension mismatch");
}

double LogisticVertexFunction::eval_impl(const setfn::ElementSet& s) {
  if (s.ground_size() != w_.size())
    throw std::invalid_argument("set does not match ground size");
  double score = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    double xi = x0_[i] + (s.contains(static_cast<int>(i)) ? eps_ : -eps_);
    score += w_[i] * xi;
  }
  return std::log1p(std::exp(-score));
}

LogisticVertexFunction counterexample_instance() {
  return LogisticVertexFunction({-1.0, -1.0}, {0.0, 0.0}, 1.0);
}

ModularFunction random_modular(std::size_t n, rng::Engine& eng, double lo,
                               double hi) {
  std::vector<double> w(n);
  for (auto& wi : w) wi = rng::uniform(eng, lo, hi);
  return ModularFunction(std::move(w));
}

WeightedCoverageFunction random_coverage(std::size_t n, std::size_t items,
                                         rng::Engine& eng) {
  if (items == 0 || items > 64)
    throw std::invalid_argument("universe size must be in [1, 64]");
  std::vector<std::uint64_t> covers(n, 0);
  for (auto& mask : covers) {
    for (std::size_t j = 0; j < items; ++j) {
      if (rng::uniform(eng) < 0.4) mask |= std::uint64_t{1} << j;
    }
  }
  std::vector<double> weights(items);
  for (auto& wj : weights) wj = rng::uniform(eng);
  return WeightedCoverageFunction(std::move(covers), std::move(weights));
}

TableFunction random_table(std::size_t n, rng::Engine& eng) {
  std::vector<double> values(std::size_t{1} << n);
  for (auto& v : values) v = rng::uniform(eng);
  return TableFunction(n, std::move(values));
}

}  // namespace lsattack::instances
