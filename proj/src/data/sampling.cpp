#include "avsum/data/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace avsum::data {

std::vector<int64_t> downsample_indices(int64_t n_frames, double source_fps, double target_fps) {
  require(target_fps > 0.0, "downsample: target_fps must be > 0");
  require(target_fps <= source_fps, "downsample: target_fps must be <= source_fps");
  std::vector<int64_t> idx;
  const double stride = source_fps / target_fps;
  for (int64_t k = 0;; ++k) {
    const auto i = static_cast<int64_t>(std::floor(static_cast<double>(k) * stride));
    if (i >= n_frames) break;
    idx.push_back(i);
  }
  return idx;
}

std::vector<int64_t> uniform_indices(int64_t n_frames, int64_t target_len) {
  require(n_frames >= 1, "uniform_sample: empty sequence");
  require(target_len >= 2, "uniform_sample: target length must be >= 2");
  std::vector<int64_t> idx(static_cast<size_t>(target_len));
  const double scale =
      static_cast<double>(n_frames - 1) / static_cast<double>(target_len - 1);
  for (int64_t j = 0; j < target_len; ++j)
    idx[static_cast<size_t>(j)] = std::llround(static_cast<double>(j) * scale);
  return idx;
}

FeatureSequence take_frames(const FeatureSequence& seq, const std::vector<int64_t>& idx,
                            double new_fps) {
  FeatureSequence out;
  out.video_id = seq.video_id;
  out.fps = new_fps;
  out.data.resize(static_cast<Eigen::Index>(idx.size()), seq.data.cols());
  for (size_t r = 0; r < idx.size(); ++r) {
    require(idx[r] >= 0 && idx[r] < seq.n_frames(), "take_frames: index out of range");
    out.data.row(static_cast<Eigen::Index>(r)) = seq.data.row(idx[r]);
  }
  return out;
}

SummaryAnnotation take_frames(const SummaryAnnotation& ann, const std::vector<int64_t>& idx) {
  ann.validate();
  SummaryAnnotation out;
  out.video_id = ann.video_id;
  out.n_frames = static_cast<int64_t>(idx.size());
  out.group = ann.group;

  auto pick_u8 = [&](const std::vector<uint8_t>& v) {
    std::vector<uint8_t> r(idx.size());
    for (size_t j = 0; j < idx.size(); ++j) r[j] = v[static_cast<size_t>(idx[j])];
    return r;
  };
  auto pick_f = [&](const std::vector<double>& v) {
    std::vector<double> r(idx.size());
    for (size_t j = 0; j < idx.size(); ++j) r[j] = v[static_cast<size_t>(idx[j])];
    return r;
  };

  out.key_frames = pick_u8(ann.key_frames);
  out.face_flags = pick_u8(ann.face_flags);
  if (!ann.importance.empty()) out.importance = pick_f(ann.importance);
  for (const auto& track : ann.rater_tracks) out.rater_tracks.push_back(pick_f(track));

  // boundary b maps to the number of kept frames drawn from [0, b)
  out.shot_boundaries.push_back(0);
  for (size_t bi = 1; bi + 1 < ann.shot_boundaries.size(); ++bi) {
    const int64_t b = ann.shot_boundaries[bi];
    const auto pos = std::lower_bound(idx.begin(), idx.end(), b) - idx.begin();
    if (pos > out.shot_boundaries.back() && pos < static_cast<int64_t>(idx.size()))
      out.shot_boundaries.push_back(pos);
  }
  out.shot_boundaries.push_back(static_cast<int64_t>(idx.size()));
  out.validate();
  return out;
}

FeatureSequence downsample(const FeatureSequence& seq, double source_fps, double target_fps) {
  const auto idx = downsample_indices(seq.n_frames(), source_fps, target_fps);
  return take_frames(seq, idx, target_fps);
}

std::pair<FeatureSequence, SummaryAnnotation> uniform_sample(const FeatureSequence& seq,
                                                             const SummaryAnnotation& ann,
                                                             int64_t target_len) {
  require(seq.n_frames() == ann.n_frames, "uniform_sample: feature/annotation length mismatch");
  const auto idx = uniform_indices(seq.n_frames(), target_len);
  return {take_frames(seq, idx, seq.fps), take_frames(ann, idx)};
}

}  // namespace avsum::data
