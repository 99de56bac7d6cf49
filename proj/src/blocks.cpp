#include "lsattack/blocks.hpp"

#include <numeric>
#include <stdexcept>

#include "lsattack/kernels.hpp"

namespace lsattack::blocks {

NoiseCanvas default_canvas(const ImageSpec& spec, int initial_k) {
  spec.validate();
  if (initial_k < 1) throw std::invalid_argument("block size must be >= 1");
  auto side = [&](int dim) {
    if (dim % initial_k == 0) return dim;
    int canvas = initial_k;
    while (canvas * 2 < dim) canvas *= 2;
    return canvas;
  };
  return {side(spec.height), side(spec.width)};
}

BlockGrid build_ground_set(const ImageSpec& spec, const NoiseCanvas& canvas,
                           int k) {
  spec.validate();
  if (k < 1) throw std::invalid_argument("block size must be >= 1");
  if (canvas.height < 1 || canvas.width < 1)
    throw std::invalid_argument("canvas dimensions must be positive");
  if (canvas.height % k != 0 || canvas.width % k != 0)
    throw std::invalid_argument("block size must divide the canvas");

  BlockGrid grid;
  grid.canvas_ = canvas;
  grid.channels_ = spec.channels;
  grid.k_ = k;
  const int rows = canvas.height / k;
  const int cols = canvas.width / k;
  grid.blocks_.reserve(static_cast<std::size_t>(rows * cols * spec.channels));
  for (int c = 0; c < spec.channels; ++c) {
    for (int r = 0; r < rows; ++r) {
      for (int col = 0; col < cols; ++col) {
        grid.blocks_.push_back(Block{c, r * k, col * k, k});
      }
    }
  }
  grid.working_ = setfn::ElementSet(grid.blocks_.size());
  return grid;
}

BlockGrid split_blocks(const BlockGrid& grid) {
  if (grid.block_size() < 2)
    throw std::invalid_argument("cannot split blocks of size 1");
  const int k = grid.block_size();
  const int k2 = k / 2;
  ImageSpec spec;
  spec.height = grid.canvas().height;
  spec.width = grid.canvas().width;
  spec.channels = grid.channels();
  BlockGrid fine = build_ground_set(spec, grid.canvas(), k2);

  const int coarse_rows = grid.canvas().height / k;
  const int coarse_cols = grid.canvas().width / k;
  for (std::size_t id = 0; id < fine.size(); ++id) {
    const Block& b = fine.block(static_cast<int>(id));
    int parent = (b.channel * coarse_rows + b.row0 / k) * coarse_cols +
                 b.col0 / k;
    if (grid.working().contains(parent))
      fine.working().insert(static_cast<int>(id));
  }
  return fine;
}

Image assemble_perturbation(const Image& x, const BlockGrid& grid,
                            const setfn::ElementSet& s, double eps, bool clip) {
  x.spec.validate();
  if (x.data.size() != static_cast<std::size_t>(x.spec.pixel_count()))
    throw std::invalid_argument("image buffer does not match its spec");
  if (x.spec.channels != grid.channels())
    throw std::invalid_argument("channel count mismatch");
  if (s.ground_size() != grid.size())
    throw std::invalid_argument("working set does not match the grid");

  const int H = grid.canvas().height;
  const int W = grid.canvas().width;
  const int c = grid.channels();

  // Sign field at canvas resolution: +1 on working blocks, -1 elsewhere.
  std::vector<double> field(static_cast<std::size_t>(c * H * W), -1.0);
  for (int id : s.ids()) {
    const Block& b = grid.block(id);
    for (int r = b.row0; r < b.row0 + b.size; ++r) {
      double* row = field.data() + (static_cast<std::size_t>(b.channel) * H +
                                    static_cast<std::size_t>(r)) *
                                       W;
      for (int col = b.col0; col < b.col0 + b.size; ++col) row[col] = 1.0;
    }
  }

  const int h = x.spec.height;
  const int w = x.spec.width;
  std::vector<int> row_src(static_cast<std::size_t>(h));
  std::vector<int> col_src(static_cast<std::size_t>(w));
  for (int r = 0; r < h; ++r) row_src[static_cast<std::size_t>(r)] = r * H / h;
  for (int col = 0; col < w; ++col)
    col_src[static_cast<std::size_t>(col)] = col * W / w;

  std::vector<double> signs(x.data.size());
  for (int ch = 0; ch < c; ++ch) {
    for (int r = 0; r < h; ++r) {
      const double* src =
          field.data() +
          (static_cast<std::size_t>(ch) * H + row_src[static_cast<std::size_t>(r)]) * W;
      double* dst = signs.data() + (static_cast<std::size_t>(ch) * h + r) * w;
      for (int col = 0; col < w; ++col)
        dst[col] = src[col_src[static_cast<std::size_t>(col)]];
    }
  }

  Image out;
  out.spec = x.spec;
  out.data.resize(x.data.size());
  if (clip)
    kernels::signed_step_clamped(x.data.data(), signs.data(), eps, x.spec.lo,
                                 x.spec.hi, out.data.data(), x.data.size());
  else
    kernels::signed_step(x.data.data(), signs.data(), eps, out.data.data(),
                         x.data.size());
  return out;
}

std::vector<int> BatchSlice::ids() const {
  std::vector<int> out(size());
  std::iota(out.begin(), out.end(), begin);
  return out;
}

std::vector<BatchSlice> partition_minibatches(const setfn::GroundSet& v,
                                              int batch_size) {
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  std::vector<BatchSlice> slices;
  const int n = static_cast<int>(v.size);
  for (int begin = 0; begin < n; begin += batch_size) {
    slices.push_back({begin, std::min(begin + batch_size, n)});
  }
  return slices;
}

}  // namespace lsattack::blocks
