#include "lsattack/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lsattack/kernels.hpp"
#include "lsattack/rng.hpp"

namespace lsattack::models {

const char* activation_name(Activation a) {
  return a == Activation::relu ? "relu" : "identity";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "identity") return Activation::identity;
  throw std::invalid_argument("unknown activation: " + name);
}

FeedForwardNet::FeedForwardNet(std::vector<DenseLayer> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("net needs >= 1 layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.in == 0 || l.out == 0)
      throw std::invalid_argument("layer dimensions must be positive");
    if (l.weights.size() != l.in * l.out || l.bias.size() != l.out)
      throw std::invalid_argument("layer parameter sizes do not match shape");
    if (i > 0 && layers_[i - 1].out != l.in)
      throw std::invalid_argument("consecutive layer dimensions disagree");
  }
}

std::size_t FeedForwardNet::input_dim() const { return layers_.front().in; }
std::size_t FeedForwardNet::num_classes() const { return layers_.back().out; }

namespace {

struct ForwardTrace {
  // pre[i] holds layer i's pre-activation, post[i] its activation output.
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> post;
};

void check_input(const FeedForwardNet& net, std::span<const double> x) {
  if (x.size() != net.input_dim())
    throw std::invalid_argument("input dimension mismatch");
}

ForwardTrace run_forward(const FeedForwardNet& net, std::span<const double> x) {
  ForwardTrace tr;
  const auto& layers = net.layers();
  tr.pre.resize(layers.size());
  tr.post.resize(layers.size());
  const double* input = x.data();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    tr.pre[i].resize(l.out);
    kernels::gemv(l.weights.data(), input, l.bias.data(), tr.pre[i].data(),
                  l.out, l.in);
    tr.post[i] = tr.pre[i];
    if (l.act == Activation::relu) {
      for (auto& v : tr.post[i]) v = std::max(v, 0.0);
    }
    input = tr.post[i].data();
  }
  return tr;
}

int argmax(std::span<const double> v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

// Numerically stable cross-entropy; also yields the softmax probabilities.
double cross_entropy(std::span<const double> logits, int label,
                     std::vector<double>& probs) {
  double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  probs.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - m);
    sum += probs[i];
  }
  for (auto& p : probs) p /= sum;
  double loss =
      std::log(sum) + m - logits[static_cast<std::size_t>(label)];
  if (!std::isfinite(loss))
    throw std::domain_error("non-finite loss in forward pass");
  return std::max(loss, 0.0);
}

void check_label(const FeedForwardNet& net, int label) {
  if (label < 0 || static_cast<std::size_t>(label) >= net.num_classes())
    throw std::invalid_argument("label out of range");
}

}  // namespace

std::vector<double> FeedForwardNet::logits(std::span<const double> x) const {
  check_input(*this, x);
  return run_forward(*this, x).post.back();
}

int predict(const FeedForwardNet& net, std::span<const double> x) {
  return argmax(net.logits(x));
}

Prediction predict_loss(const FeedForwardNet& net, std::span<const double> x,
                        int label) {
  check_input(net, x);
  check_label(net, label);
  auto tr = run_forward(net, x);
  const auto& logits = tr.post.back();
  std::vector<double> probs;
  double loss = cross_entropy(logits, label, probs);
  return {loss, argmax(logits)};
}

namespace {

// Backward pass from softmax cross-entropy. Fills per-layer parameter
// gradients when sinks are provided and always returns the input gradient.
std::vector<double> backprop(const FeedForwardNet& net,
                             std::span<const double> x, int label,
                             const ForwardTrace& tr,
                             std::vector<std::vector<double>>* dw,
                             std::vector<std::vector<double>>* db) {
  const auto& layers = net.layers();
  std::vector<double> probs;
  cross_entropy(tr.post.back(), label, probs);
  std::vector<double> dz = probs;
  dz[static_cast<std::size_t>(label)] -= 1.0;

  std::vector<double> dx;
  for (std::size_t i = layers.size(); i-- > 0;) {
    const auto& l = layers[i];
    const double* below = i == 0 ? x.data() : tr.post[i - 1].data();
    if (dw) {
      (*dw)[i].assign(l.in * l.out, 0.0);
      for (std::size_t r = 0; r < l.out; ++r)
        kernels::axpy(dz[r], below, (*dw)[i].data() + r * l.in, l.in);
      (*db)[i] = dz;
    }
    dx.resize(l.in);
    kernels::gemv_transposed(l.weights.data(), dz.data(), dx.data(), l.out,
                             l.in);
    if (i > 0) {
      // relu mask of the layer below
      if (layers[i - 1].act == Activation::relu) {
        for (std::size_t j = 0; j < dx.size(); ++j) {
          if (tr.pre[i - 1][j] <= 0.0) dx[j] = 0.0;
        }
      }
      dz = dx;
    }
  }
  return dx;
}

}  // namespace

InputGradient forward_loss(const FeedForwardNet& net, std::span<const double> x,
                           int label) {
  check_input(net, x);
  check_label(net, label);
  auto tr = run_forward(net, x);
  std::vector<double> probs;
  double loss = cross_entropy(tr.post.back(), label, probs);
  auto grad = backprop(net, x, label, tr, nullptr, nullptr);
  return {loss, argmax(tr.post.back()), std::move(grad)};
}

FeedForwardNet make_softmax_regression(std::size_t classes, std::size_t dim) {
  DenseLayer l;
  l.in = dim;
  l.out = classes;
  l.weights.assign(dim * classes, 0.0);
  l.bias.assign(classes, 0.0);
  return FeedForwardNet({std::move(l)});
}

FeedForwardNet make_mlp(std::size_t dim, const std::vector<std::size_t>& hidden,
                        std::size_t classes, std::uint64_t seed) {
  rng::Engine eng(seed);
  std::vector<DenseLayer> layers;
  std::size_t in = dim;
  auto push = [&](std::size_t out, Activation act) {
    DenseLayer l;
    l.in = in;
    l.out = out;
    l.weights.resize(in * out);
    double scale = std::sqrt(2.0 / static_cast<double>(in));
    for (auto& w : l.weights) w = scale * rng::normal(eng);
    l.bias.assign(out, 0.0);
    l.act = act;
    layers.push_back(std::move(l));
    in = out;
  };
  for (std::size_t h : hidden) push(h, Activation::relu);
  push(classes, Activation::identity);
  return FeedForwardNet(std::move(layers));
}

LabeledDataset gen_synthetic(int classes, const ImageSpec& spec, int count,
                             std::uint64_t seed, double sigma, double mean_lo,
                             double mean_hi) {
  spec.validate();
  if (classes < 2)
    throw std::invalid_argument("synthetic data needs >= 2 classes");
  if (count < 1) throw std::invalid_argument("count must be positive");
  const std::size_t dim = static_cast<std::size_t>(spec.pixel_count());
  rng::Engine eng(seed);
  std::vector<std::vector<double>> means(static_cast<std::size_t>(classes));
  for (auto& mu : means) {
    mu.resize(dim);
    for (auto& v : mu) v = rng::uniform(eng, mean_lo, mean_hi);
  }
  LabeledDataset data;
  data.spec = spec;
  data.images.reserve(static_cast<std::size_t>(count));
  data.labels.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    int label = i % classes;
    const auto& mu = means[static_cast<std::size_t>(label)];
    std::vector<double> img(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      img[j] = std::clamp(mu[j] + sigma * rng::normal(eng), 0.0, 1.0);
    }
    data.images.push_back(std::move(img));
    data.labels.push_back(label);
  }
  return data;
}

FeedForwardNet train_sgd(FeedForwardNet model, const LabeledDataset& data,
                         int epochs, double lr, std::uint64_t seed) {
  if (lr <= 0.0) throw std::invalid_argument("learning rate must be positive");
  if (data.size() == 0) throw std::invalid_argument("empty dataset");
  std::set<int> distinct(data.labels.begin(), data.labels.end());
  if (distinct.size() < 2)
    throw std::invalid_argument("training data holds a single class");

  rng::Engine eng(seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  const std::size_t nlayers = model.layers().size();
  std::vector<std::vector<double>> dw(nlayers), db(nlayers);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng::shuffle(order, eng);
    for (std::size_t idx : order) {
      const auto& x = data.images[idx];
      auto tr = run_forward(model, x);
      backprop(model, x, data.labels[idx], tr, &dw, &db);
      for (std::size_t i = 0; i < nlayers; ++i) {
        auto& l = model.layers()[i];
        kernels::axpy(-lr, dw[i].data(), l.weights.data(), l.weights.size());
        kernels::axpy(-lr, db[i].data(), l.bias.data(), l.bias.size());
      }
    }
  }
  return model;
}

double accuracy(const FeedForwardNet& net, const LabeledDataset& data) {
  if (data.size() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (predict(net, data.images[i]) == data.labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

std::vector<double> fgsm(const FeedForwardNet& net, std::span<const double> x,
                         int label, double eps, bool clip, double lo,
                         double hi) {
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  auto g = forward_loss(net, x, label);
  std::vector<double> signs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    signs[i] = g.gradient[i] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> adv(x.size());
  if (clip)
    kernels::signed_step_clamped(x.data(), signs.data(), eps, lo, hi,
                                 adv.data(), x.size());
  else
    kernels::signed_step(x.data(), signs.data(), eps, adv.data(), x.size());
  return adv;
}

std::vector<double> pgd(const FeedForwardNet& net, std::span<const double> x,
                        int label, double eps, int steps, double step_size,
                        bool targeted, bool clip, double lo, double hi) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
  std::vector<double> adv(x.begin(), x.end());
  std::vector<double> signs(x.size());
  const double dir = targeted ? -1.0 : 1.0;
  for (int t = 0; t < steps; ++t) {
    auto g = forward_loss(net, adv, label);
    for (std::size_t i = 0; i < adv.size(); ++i)
      signs[i] = g.gradient[i] >= 0.0 ? dir : -dir;
    kernels::signed_step(adv.data(), signs.data(), step_size, adv.data(),
                         adv.size());
    for (std::size_t i = 0; i < adv.size(); ++i) {
      adv[i] = std::clamp(adv[i], x[i] - eps, x[i] + eps);
      if (clip) adv[i] = std::clamp(adv[i], lo, hi);
    }
  }
  return adv;
}

double vertex_fraction(std::span<const double> x_adv, std::span<const double> x,
                       double eps, double tol) {
  if (x_adv.size() != x.size())
    throw std::invalid_argument("shape mismatch");
  if (x.empty()) return 0.0;
  std::size_t hits =
      kernels::count_vertex(x_adv.data(), x.data(), eps, tol, x.size());
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

}  // namespace lsattack::models
