#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "avsum/data/manifest.hpp"

namespace avsum::data {

// Seeded corpus with planted structure:
//   features  = isotropic unit noise
//              + separability * key_amp_ratio * z_i * w_key
//              + separability * (a_i * w_A + v_i * w_V)
//   a, v      = Gaussian-smoothed white noise squashed into [-1, 1]
//   z         = 1 on key segments covering ~key_density of the frames
//   faces     = top face_rate quantile of a rank blend of |affect| and
//               independent noise; face_affect_corr dials the coupling
// w_key, w_A, w_V are corpus-level orthonormal directions, so the signal is
// shared across videos and a held-out group stays decodable.
struct SynthParams {
  int n_videos = 20;
  int64_t n_frames = 320;
  int dim = 64;
  double smoothness = 9.0;        // Gaussian kernel sigma, in frames
  double key_density = 0.15;      // target fraction of key frames
  double separability = 3.0;      // planted signal amplitude
  double face_affect_corr = 0.5;  // 0 = independent flags, 1 = pure |affect| ranking
  int n_groups = 4;

  // When > 0, segment keyness is blended toward mean |affect| over the
  // segment, so key frames become predictable from the affect signal alone.
  double affect_key_coupling = 0.0;
  double key_amp_ratio = 1.0;   // scales only the key direction
  double face_rate = 0.4;       // fraction of frames flagged as face
  double mean_segment_len = 20.0;
  int n_raters = 0;
  double rater_noise = 0.1;

  void validate() const;
  std::string to_json() const;
  static SynthParams from_json(const std::string& text);
};

struct SynthVideo {
  FeatureSequence features;
  SummaryAnnotation annotation;
  MatF affect_targets;  // n_frames x 2, columns [activation, valence]
};

// Pure function of (params, seed, index); videos can be generated in any
// order or in parallel and come out identical.
SynthVideo generate_video(const SynthParams& params, uint64_t seed, int index);

// Writes AVSF features, JSON annotations, affect targets and the manifest
// under out_dir, then returns the manifest.
CorpusManifest generate_synthetic_corpus(const SynthParams& params, uint64_t seed,
                                         const std::filesystem::path& out_dir);

}  // namespace avsum::data
