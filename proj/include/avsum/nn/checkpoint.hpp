#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "avsum/common.hpp"
#include "avsum/nn/layers.hpp"

namespace avsum::nn {

// Single-file weight container: magic "AVCK", u32 version, u64 header
// length, JSON header, then per-tensor f32 payloads (row-major) in header
// order. The architecture hash guards against loading weights into a
// mismatched model.
struct Checkpoint {
  std::string architecture;  // descriptor string, hashed for validation
  uint64_t seed = 0;
  int epoch = 0;
  nlohmann::json meta;  // attribute / criterion / scores, free-form
  std::vector<std::pair<std::string, MatF>> tensors;

  std::string arch_hash() const;
  const MatF& tensor(const std::string& name) const;
};

uint64_t fnv1a64(const std::string& s);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Round-trips between a model's double-precision params and f32 tensors.
Checkpoint snapshot_params(const std::string& architecture,
                           const std::vector<Param*>& params);
void restore_params(const Checkpoint& ckpt, const std::vector<Param*>& params,
                    const std::string& expected_architecture);

}  // namespace avsum::nn
