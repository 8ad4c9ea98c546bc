#pragma once

#include <vector>

#include "avsum/data/annotation.hpp"
#include "avsum/data/avsf.hpp"

namespace avsum::data {

// Frame indices kept when decimating from source_fps to target_fps:
// floor(k * source_fps / target_fps) for k = 0, 1, ... while in range.
std::vector<int64_t> downsample_indices(int64_t n_frames, double source_fps, double target_fps);

// Indices for resampling to exactly target_len frames, first and last frame
// always kept: round(j * (n_frames - 1) / (target_len - 1)). When
// n_frames < target_len the indices repeat.
std::vector<int64_t> uniform_indices(int64_t n_frames, int64_t target_len);

FeatureSequence take_frames(const FeatureSequence& seq, const std::vector<int64_t>& idx,
                            double new_fps);

// Labels, flags, importance and rater tracks follow the same index set.
// Shot boundaries are remapped to the sampled timeline (deduplicated,
// degenerate shots collapse).
SummaryAnnotation take_frames(const SummaryAnnotation& ann, const std::vector<int64_t>& idx);

FeatureSequence downsample(const FeatureSequence& seq, double source_fps, double target_fps);

std::pair<FeatureSequence, SummaryAnnotation> uniform_sample(const FeatureSequence& seq,
                                                             const SummaryAnnotation& ann,
                                                             int64_t target_len);

}  // namespace avsum::data
