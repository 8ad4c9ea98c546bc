#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "avsum/common.hpp"

namespace avsum::data {

// Frame-level visual feature matrix for one video. Row i is the feature of
// frame i. `fps` is carried as metadata (the AVSF container stores only the
// matrix); readers default it to the 2 fps contract rate.
struct FeatureSequence {
  std::string video_id;
  MatF data;  // n_frames x dim, 32-bit
  double fps = 2.0;

  Eigen::Index n_frames() const { return data.rows(); }
  Eigen::Index dim() const { return data.cols(); }
};

// AVSF container: magic "AVSF", u32 version=1, u32 N, u32 D, then N*D
// little-endian f32 values in row-major order. Round trips are bit-exact.
void write_avsf(const MatF& m, const std::filesystem::path& path);
MatF read_avsf(const std::filesystem::path& path);

void write_feature_file(const FeatureSequence& seq, const std::filesystem::path& path);
FeatureSequence read_feature_file(const std::filesystem::path& path, double fps = 2.0);

}  // namespace avsum::data
