// Self-describing text model files: a versioned header, per-layer shapes and
// activations, then row-major weights and biases at full double precision.
#pragma once

#include <string>

#include "lsattack/models.hpp"

namespace lsattack::harness {

void save_model(const models::FeedForwardNet& net, const std::string& path);
models::FeedForwardNet load_model(const std::string& path);

}  // namespace lsattack::harness
