// Shared image vocabulary: dimensions, value range, and flat channel-major
// pixel storage.
#pragma once

#include <stdexcept>
#include <vector>

namespace lsattack {

struct ImageSpec {
  int height = 0;
  int width = 0;
  int channels = 1;
  double lo = 0.0;
  double hi = 1.0;

  int pixel_count() const { return height * width * channels; }

  void validate() const {
    if (height < 1 || width < 1 || channels < 1)
      throw std::invalid_argument("image dimensions must be positive");
    if (!(lo < hi)) throw std::invalid_argument("value range must be ordered");
  }

  bool operator==(const ImageSpec&) const = default;
};

// Pixels stored channel-major: data[(c * height + row) * width + col].
struct Image {
  ImageSpec spec;
  std::vector<double> data;

  static Image zeros(const ImageSpec& spec) {
    spec.validate();
    return {spec, std::vector<double>(static_cast<std::size_t>(
                      spec.pixel_count()))};
  }

  double& at(int c, int r, int col) {
    return data[static_cast<std::size_t>((c * spec.height + r) * spec.width +
                                         col)];
  }
  double at(int c, int r, int col) const {
    return data[static_cast<std::size_t>((c * spec.height + r) * spec.width +
                                         col)];
  }
};

}  // namespace lsattack
