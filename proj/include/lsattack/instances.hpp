// Closed-form set functions used by the verification suites and as test
// fixtures: modular weights, weighted coverage, explicit value tables, and
// the two-pixel logistic instance whose marginal gains break the
// diminishing-returns inequality.
#pragma once

#include <cstdint>
#include <vector>

#include "lsattack/rng.hpp"
#include "lsattack/setfn.hpp"

namespace lsattack::instances {

// F(S) = sum of per-element weights. Modular, hence submodular.
class ModularFunction final : public setfn::SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);

  std::size_t ground_size() const { return weights_.size(); }

 private:
  double eval_impl(const setfn::ElementSet& s) override;

  std::vector<double> weights_;
};

// F(S) = total weight of universe items covered by the union of the members'
// cover masks. Monotone submodular.
class WeightedCoverageFunction final : public setfn::SetFunction {
 public:
  WeightedCoverageFunction(std::vector<std::uint64_t> covers,
                           std::vector<double> item_weights);

  std::size_t ground_size() const { return covers_.size(); }

 private:
  double eval_impl(const setfn::ElementSet& s) override;

  std::vector<std::uint64_t> covers_;
  std::vector<double> item_weights_;
};

// Explicit table of 2^n values indexed by membership mask.
class TableFunction final : public setfn::SetFunction {
 public:
  TableFunction(std::size_t ground_size, std::vector<double> values);

  std::size_t ground_size() const { return n_; }

 private:
  double eval_impl(const setfn::ElementSet& s) override;

  std::size_t n_;
  std::vector<double> values_;
};

// Logistic loss on the vertex x0 +/- eps selected by S:
// F(S) = log(1 + exp(-w . x_adv(S))), coordinate i gets +eps when i is in S.
class LogisticVertexFunction final : public setfn::SetFunction {
 public:
  LogisticVertexFunction(std::vector<double> w, std::vector<double> x0,
                         double eps);

  std::size_t ground_size() const { return w_.size(); }

 private:
  double eval_impl(const setfn::ElementSet& s) override;

  std::vector<double> w_;
  std::vector<double> x0_;
  double eps_;
};

class ConstantFunction final : public setfn::SetFunction {
 public:
  explicit ConstantFunction(std::size_t ground_size, double value = 0.0)
      : n_(ground_size), value_(value) {}

  std::size_t ground_size() const { return n_; }

 private:
  double eval_impl(const setfn::ElementSet&) override { return value_; }

  std::size_t n_;
  double value_;
};

// Two-pixel instance w = (-1,-1), x0 = (0,0), eps = 1. Its marginal gains of
// element 1 at the empty set vs. at {0} are 0.5662 vs. 1.4338, so the
// diminishing-returns inequality fails with witness (empty, {0}, 1).
LogisticVertexFunction counterexample_instance();

ModularFunction random_modular(std::size_t n, rng::Engine& eng,
                               double lo = -1.0, double hi = 1.0);
WeightedCoverageFunction random_coverage(std::size_t n, std::size_t items,
                                         rng::Engine& eng);
// Values i.i.d. uniform in [0, 1]; generically non-submodular.
TableFunction random_table(std::size_t n, rng::Engine& eng);

}  // namespace lsattack::instances
