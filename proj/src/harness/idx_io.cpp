#include "lsattack/harness/idx_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace lsattack::harness {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

[[noreturn]] void fail(const std::string& path, std::streamoff offset,
                       const std::string& what) {
  throw std::runtime_error(path + " (offset " + std::to_string(offset) +
                           "): " + what);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char bytes[4] = {static_cast<unsigned char>(v >> 24),
                            static_cast<unsigned char>(v >> 16),
                            static_cast<unsigned char>(v >> 8),
                            static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t read_u32(std::istream& in, const std::string& path) {
  unsigned char bytes[4];
  std::streamoff at = in.tellg();
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) fail(path, at, "truncated header");
  return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
         (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

}  // namespace

void write_idx_images(const std::string& path,
                      const models::LabeledDataset& data) {
  if (data.spec.channels != 1)
    throw std::invalid_argument("idx image files hold single-channel data");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_u32(out, kImageMagic);
  write_u32(out, static_cast<std::uint32_t>(data.size()));
  write_u32(out, static_cast<std::uint32_t>(data.spec.height));
  write_u32(out, static_cast<std::uint32_t>(data.spec.width));
  for (const auto& img : data.images) {
    for (double v : img) {
      double q = std::round(std::clamp(v, 0.0, 1.0) * 255.0);
      char byte = static_cast<char>(static_cast<unsigned char>(q));
      out.write(&byte, 1);
    }
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_idx_labels(const std::string& path,
                      const models::LabeledDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_u32(out, kLabelMagic);
  write_u32(out, static_cast<std::uint32_t>(data.size()));
  for (int label : data.labels) {
    char byte = static_cast<char>(static_cast<unsigned char>(label));
    out.write(&byte, 1);
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

models::LabeledDataset read_idx_images(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::uint32_t magic = read_u32(in, path);
  if (magic != kImageMagic) fail(path, 0, "bad image magic");
  std::uint32_t n = read_u32(in, path);
  std::uint32_t rows = read_u32(in, path);
  std::uint32_t cols = read_u32(in, path);
  if (rows == 0 || cols == 0) fail(path, 8, "zero image dimensions");

  models::LabeledDataset data;
  data.spec =
      ImageSpec{static_cast<int>(rows), static_cast<int>(cols), 1, 0.0, 1.0};
  data.images.reserve(n);
  const std::size_t dim = rows * static_cast<std::size_t>(cols);
  std::vector<unsigned char> buf(dim);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::streamoff at = in.tellg();
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(dim));
    if (!in) fail(path, at, "truncated image data");
    std::vector<double> img(dim);
    for (std::size_t j = 0; j < dim; ++j) img[j] = buf[j] / 255.0;
    data.images.push_back(std::move(img));
  }
  return data;
}

void read_idx_labels(const std::string& path, models::LabeledDataset& data) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::uint32_t magic = read_u32(in, path);
  if (magic != kLabelMagic) fail(path, 0, "bad label magic");
  std::uint32_t n = read_u32(in, path);
  if (n != data.size()) fail(path, 4, "label count does not match images");
  data.labels.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::streamoff at = in.tellg();
    char byte;
    in.read(&byte, 1);
    if (!in) fail(path, at, "truncated label data");
    data.labels[i] = static_cast<unsigned char>(byte);
  }
}

models::LabeledDataset load_idx_dataset(const std::string& images_path,
                                        const std::string& labels_path) {
  models::LabeledDataset data = read_idx_images(images_path);
  read_idx_labels(labels_path, data);
  return data;
}

}  // namespace lsattack::harness
