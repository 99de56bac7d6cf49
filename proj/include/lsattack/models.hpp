// Desk-scale victims and white-box baselines: dense softmax classifiers with
// forward pass and input gradients, a seeded SGD trainer, sign-step attacks,
// and noise statistics.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lsattack/image.hpp"

namespace lsattack::models {

enum class Activation { identity, relu };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;  // out x in, row-major
  std::vector<double> bias;     // out
  Activation act = Activation::identity;
};

// Feed-forward softmax classifier. A single identity layer is a softmax
// regression; hidden relu layers make it an MLP. The final layer feeds
// softmax cross-entropy.
class FeedForwardNet {
 public:
  FeedForwardNet() = default;
  explicit FeedForwardNet(std::vector<DenseLayer> layers);

  std::size_t input_dim() const;
  std::size_t num_classes() const;
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  std::vector<double> logits(std::span<const double> x) const;

 private:
  std::vector<DenseLayer> layers_;
};

FeedForwardNet make_softmax_regression(std::size_t classes, std::size_t dim);
FeedForwardNet make_mlp(std::size_t dim, const std::vector<std::size_t>& hidden,
                        std::size_t classes, std::uint64_t seed);

struct Prediction {
  double loss = 0.0;  // cross-entropy, always >= 0
  int predicted = 0;  // argmax class, ties to the smaller index
};

struct InputGradient {
  double loss = 0.0;
  int predicted = 0;
  std::vector<double> gradient;  // d loss / d x
};

int predict(const FeedForwardNet& net, std::span<const double> x);
Prediction predict_loss(const FeedForwardNet& net, std::span<const double> x,
                        int label);
InputGradient forward_loss(const FeedForwardNet& net, std::span<const double> x,
                           int label);

struct LabeledDataset {
  ImageSpec spec;
  std::vector<std::vector<double>> images;  // flat vectors in [0, 1]
  std::vector<int> labels;

  std::size_t size() const { return images.size(); }
};

// Gaussian blobs with per-class means drawn uniformly in [mean_lo, mean_hi],
// pixels clamped to [0, 1]. Labels cycle round-robin. Deterministic per seed.
LabeledDataset gen_synthetic(int classes, const ImageSpec& spec, int count,
                             std::uint64_t seed, double sigma = 0.1,
                             double mean_lo = 0.35, double mean_hi = 0.65);

// Plain per-sample SGD with a seeded shuffle each epoch. Zero epochs returns
// the model unchanged. Throws std::invalid_argument when the data holds
// fewer than two distinct labels.
FeedForwardNet train_sgd(FeedForwardNet model, const LabeledDataset& data,
                         int epochs, double lr, std::uint64_t seed);

double accuracy(const FeedForwardNet& net, const LabeledDataset& data);

// x + eps * sign(grad), with sign(0) = +1. Clamps to [lo, hi] when clip is
// set.
std::vector<double> fgsm(const FeedForwardNet& net, std::span<const double> x,
                         int label, double eps, bool clip = false,
                         double lo = 0.0, double hi = 1.0);

// Iterated sign steps projected back onto the eps-ball around x (and the
// value range when clip is set). Untargeted ascends the loss at `label`;
// targeted descends it.
std::vector<double> pgd(const FeedForwardNet& net, std::span<const double> x,
                        int label, double eps, int steps, double step_size,
                        bool targeted = false, bool clip = false,
                        double lo = 0.0, double hi = 1.0);

// Fraction of coordinates with | |x_adv - x| - eps | <= tol.
double vertex_fraction(std::span<const double> x_adv, std::span<const double> x,
                       double eps, double tol = 1e-9);

}  // namespace lsattack::models
