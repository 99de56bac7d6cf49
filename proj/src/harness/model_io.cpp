#include "lsattack/harness/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lsattack::harness {
namespace {

constexpr const char* kFormatTag = "lsattack-model";
constexpr int kFormatVersion = 1;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void save_model(const models::FeedForwardNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << kFormatTag << " v" << kFormatVersion << "\n";
  out << "layers " << net.layers().size() << "\n";
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    const auto& l = net.layers()[i];
    out << "layer " << i << " in " << l.in << " out " << l.out << " act "
        << models::activation_name(l.act) << "\n";
    for (std::size_t r = 0; r < l.out; ++r) {
      out << "w";
      for (std::size_t c = 0; c < l.in; ++c)
        out << ' ' << fmt_double(l.weights[r * l.in + c]);
      out << "\n";
    }
    out << "b";
    for (double b : l.bias) out << ' ' << fmt_double(b);
    out << "\n";
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

models::FeedForwardNet load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  int lineno = 0;
  auto next_line = [&](std::string& line) {
    if (!std::getline(in, line)) fail(path, lineno, "unexpected end of file");
    ++lineno;
  };

  std::string line;
  next_line(line);
  {
    std::istringstream header(line);
    std::string tag, version;
    header >> tag >> version;
    if (tag != kFormatTag || version != "v" + std::to_string(kFormatVersion))
      fail(path, lineno, "unrecognized model header: " + line);
  }

  next_line(line);
  std::size_t nlayers = 0;
  {
    std::istringstream ls(line);
    std::string key;
    ls >> key >> nlayers;
    if (key != "layers" || nlayers == 0)
      fail(path, lineno, "bad layer count line");
  }

  std::vector<models::DenseLayer> layers;
  for (std::size_t i = 0; i < nlayers; ++i) {
    next_line(line);
    models::DenseLayer l;
    {
      std::istringstream ls(line);
      std::string kw_layer, kw_in, kw_out, kw_act, act;
      std::size_t index = 0;
      ls >> kw_layer >> index >> kw_in >> l.in >> kw_out >> l.out >> kw_act >>
          act;
      if (!ls || kw_layer != "layer" || index != i || kw_in != "in" ||
          kw_out != "out" || kw_act != "act")
        fail(path, lineno, "bad layer header");
      l.act = models::activation_from_name(act);
    }
    l.weights.resize(l.in * l.out);
    for (std::size_t r = 0; r < l.out; ++r) {
      next_line(line);
      std::istringstream ws(line);
      std::string tag;
      ws >> tag;
      if (tag != "w") fail(path, lineno, "expected weight row");
      for (std::size_t c = 0; c < l.in; ++c) {
        if (!(ws >> l.weights[r * l.in + c]))
          fail(path, lineno, "short weight row");
      }
    }
    next_line(line);
    {
      std::istringstream bs(line);
      std::string tag;
      bs >> tag;
      if (tag != "b") fail(path, lineno, "expected bias row");
      l.bias.resize(l.out);
      for (std::size_t r = 0; r < l.out; ++r) {
        if (!(bs >> l.bias[r])) fail(path, lineno, "short bias row");
      }
    }
    layers.push_back(std::move(l));
  }
  return models::FeedForwardNet(std::move(layers));
}

}  // namespace lsattack::harness
