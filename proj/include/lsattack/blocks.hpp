// Block hierarchy over the noise canvas: ground-set construction, quadtree
// splitting, and assembly of +/-eps block patterns into pixel space via
// nearest-neighbor resize.
#pragma once

#include <vector>

#include "lsattack/image.hpp"
#include "lsattack/setfn.hpp"

namespace lsattack::blocks {

// Block-space resolution of the noise field. The field is resized to the
// image by nearest neighbor: source index = floor(dst * src_len / dst_len).
struct NoiseCanvas {
  int height = 0;
  int width = 0;
};

struct Block {
  int channel = 0;
  int row0 = 0;
  int col0 = 0;
  int size = 0;

  bool operator==(const Block&) const = default;
};

// Dense tiling of the canvas by k x k blocks per channel, in
// (channel, row, col) order, together with the working set of blocks
// currently assigned +eps.
class BlockGrid {
 public:
  BlockGrid() = default;

  const NoiseCanvas& canvas() const { return canvas_; }
  int channels() const { return channels_; }
  int block_size() const { return k_; }
  const std::vector<Block>& all_blocks() const { return blocks_; }
  const Block& block(int id) const {
    return blocks_[static_cast<std::size_t>(id)];
  }
  std::size_t size() const { return blocks_.size(); }
  setfn::GroundSet ground_set() const { return {blocks_.size()}; }

  const setfn::ElementSet& working() const { return working_; }
  setfn::ElementSet& working() { return working_; }

  friend BlockGrid build_ground_set(const ImageSpec& spec,
                                    const NoiseCanvas& canvas, int k);
  friend BlockGrid split_blocks(const BlockGrid& grid);

 private:
  NoiseCanvas canvas_;
  int channels_ = 0;
  int k_ = 0;
  std::vector<Block> blocks_;
  setfn::ElementSet working_;
};

// Canvas sizing rule: the image dimension itself when divisible by
// initial_k, otherwise the smallest initial_k * 2^m whose doubling reaches
// the image side.
NoiseCanvas default_canvas(const ImageSpec& spec, int initial_k);

// Grid of (H/k) * (W/k) * channels blocks with an empty working set. Throws
// std::invalid_argument when k does not divide the canvas.
BlockGrid build_ground_set(const ImageSpec& spec, const NoiseCanvas& canvas,
                           int k);

// Replaces every block by its four quadrant children at size k/2. Children
// inherit the parent's working-set membership, so the assembled perturbation
// is unchanged. Requires k >= 2.
BlockGrid split_blocks(const BlockGrid& grid);

// x plus the canvas noise field (+eps on working blocks, -eps elsewhere)
// resized to the image by nearest neighbor; clamped to the value range when
// clip is set.
Image assemble_perturbation(const Image& x, const BlockGrid& grid,
                            const setfn::ElementSet& s, double eps, bool clip);

// Contiguous ground-set slice [begin, end).
struct BatchSlice {
  int begin = 0;
  int end = 0;

  std::size_t size() const { return static_cast<std::size_t>(end - begin); }
  std::vector<int> ids() const;
  bool operator==(const BatchSlice&) const = default;
};

// Contiguous slices in ground-set order covering V; all of size batch_size
// except possibly the last.
std::vector<BatchSlice> partition_minibatches(const setfn::GroundSet& v,
                                              int batch_size);

}  // namespace lsattack::blocks
