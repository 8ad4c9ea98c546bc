#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "avsum/common.hpp"

namespace avsum::data {

// Per-frame ground truth for one video. All vectors have length n_frames;
// shot_boundaries is a strictly increasing index list starting at 0 and
// ending at n_frames, so consecutive pairs delimit the shots.
struct SummaryAnnotation {
  std::string video_id;
  int64_t n_frames = 0;
  std::vector<uint8_t> key_frames;
  std::vector<double> importance;                   // optional, empty if absent
  std::vector<std::vector<double>> rater_tracks;    // optional
  std::vector<uint8_t> face_flags;
  std::vector<int64_t> shot_boundaries;
  int group = 0;

  void validate() const;
  int64_t summary_size() const;
};

void write_annotation(const SummaryAnnotation& a, const std::filesystem::path& path);
SummaryAnnotation read_annotation(const std::filesystem::path& path);

}  // namespace avsum::data
