// IDX dataset files: big-endian magic 0x00000803 for image tensors and
// 0x00000801 for label vectors, dimension sizes, then raw bytes. Pixel bytes
// map to [0, 1] by /255.
#pragma once

#include <string>

#include "lsattack/models.hpp"

namespace lsattack::harness {

void write_idx_images(const std::string& path,
                      const models::LabeledDataset& data);
void write_idx_labels(const std::string& path,
                      const models::LabeledDataset& data);

// Reads images (spec + pixels) without labels, or merges in the label file.
models::LabeledDataset read_idx_images(const std::string& path);
void read_idx_labels(const std::string& path, models::LabeledDataset& data);

models::LabeledDataset load_idx_dataset(const std::string& images_path,
                                        const std::string& labels_path);

}  // namespace lsattack::harness
