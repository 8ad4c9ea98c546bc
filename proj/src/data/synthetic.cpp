#include "avsum/data/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "avsum/rng.hpp"

namespace avsum::data {

using nlohmann::json;

void SynthParams::validate() const {
  require(n_videos >= 1, "synth: n_videos must be >= 1");
  require(n_frames >= 4, "synth: n_frames must be >= 4");
  require(dim >= 3, "synth: dim must be >= 3 (three planted directions)");
  require(smoothness > 0.0, "synth: smoothness must be > 0");
  require(key_density > 0.0 && key_density < 1.0, "synth: key_density must be in (0,1)");
  require(separability >= 0.0, "synth: separability must be >= 0");
  require(face_affect_corr >= 0.0 && face_affect_corr <= 1.0,
          "synth: face_affect_corr must be in [0,1]");
  require(n_groups >= 1, "synth: n_groups must be >= 1");
  require(affect_key_coupling >= 0.0 && affect_key_coupling <= 1.0,
          "synth: affect_key_coupling must be in [0,1]");
  require(key_amp_ratio >= 0.0, "synth: key_amp_ratio must be >= 0");
  require(face_rate > 0.0 && face_rate < 1.0, "synth: face_rate must be in (0,1)");
  require(mean_segment_len >= 2.0, "synth: mean_segment_len must be >= 2");
  require(n_raters >= 0, "synth: n_raters must be >= 0");
  require(rater_noise >= 0.0, "synth: rater_noise must be >= 0");
}

std::string SynthParams::to_json() const {
  json j;
  j["n_videos"] = n_videos;
  j["n_frames"] = n_frames;
  j["dim"] = dim;
  j["smoothness"] = smoothness;
  j["key_density"] = key_density;
  j["separability"] = separability;
  j["face_affect_corr"] = face_affect_corr;
  j["n_groups"] = n_groups;
  j["affect_key_coupling"] = affect_key_coupling;
  j["key_amp_ratio"] = key_amp_ratio;
  j["face_rate"] = face_rate;
  j["mean_segment_len"] = mean_segment_len;
  j["n_raters"] = n_raters;
  j["rater_noise"] = rater_noise;
  return j.dump();
}

SynthParams SynthParams::from_json(const std::string& text) {
  const json j = json::parse(text);
  SynthParams p;
  p.n_videos = j.value("n_videos", p.n_videos);
  p.n_frames = j.value("n_frames", p.n_frames);
  p.dim = j.value("dim", p.dim);
  p.smoothness = j.value("smoothness", p.smoothness);
  p.key_density = j.value("key_density", p.key_density);
  p.separability = j.value("separability", p.separability);
  p.face_affect_corr = j.value("face_affect_corr", p.face_affect_corr);
  p.n_groups = j.value("n_groups", p.n_groups);
  p.affect_key_coupling = j.value("affect_key_coupling", p.affect_key_coupling);
  p.key_amp_ratio = j.value("key_amp_ratio", p.key_amp_ratio);
  p.face_rate = j.value("face_rate", p.face_rate);
  p.mean_segment_len = j.value("mean_segment_len", p.mean_segment_len);
  p.n_raters = j.value("n_raters", p.n_raters);
  p.rater_noise = j.value("rater_noise", p.rater_noise);
  p.validate();
  return p;
}

namespace {

// Gaussian-smoothed unit-variance noise squashed by tanh.
std::vector<double> smooth_signal(Rng& rng, int64_t n, double sigma) {
  std::vector<double> white(static_cast<size_t>(n));
  for (auto& x : white) x = rng.normal();

  const auto radius = static_cast<int64_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<size_t>(2 * radius + 1));
  double ksum = 0.0;
  for (int64_t k = -radius; k <= radius; ++k) {
    const double w = std::exp(-0.5 * (static_cast<double>(k) / sigma) * (static_cast<double>(k) / sigma));
    kernel[static_cast<size_t>(k + radius)] = w;
    ksum += w;
  }
  for (auto& w : kernel) w /= ksum;

  std::vector<double> smooth(static_cast<size_t>(n), 0.0);
  for (int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int64_t k = -radius; k <= radius; ++k) {
      const int64_t j = std::clamp<int64_t>(i + k, 0, n - 1);
      acc += kernel[static_cast<size_t>(k + radius)] * white[static_cast<size_t>(j)];
    }
    smooth[static_cast<size_t>(i)] = acc;
  }

  double mean = std::accumulate(smooth.begin(), smooth.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double x : smooth) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(std::max(var, 1e-12));

  for (auto& x : smooth) x = std::tanh((x - mean) / sd);
  return smooth;
}

// Normalized ranks in [0, 1]; ties broken by position.
std::vector<double> normalized_ranks(const std::vector<double>& v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  const double denom = v.size() > 1 ? static_cast<double>(v.size() - 1) : 1.0;
  for (size_t pos = 0; pos < order.size(); ++pos)
    rank[order[pos]] = static_cast<double>(pos) / denom;
  return rank;
}

std::vector<int64_t> make_segment_edges(Rng& rng, int64_t n, double mean_len) {
  std::vector<int64_t> edges{0};
  const auto lo = std::max<int64_t>(2, static_cast<int64_t>(std::floor(mean_len * 0.5)));
  const auto hi = std::max<int64_t>(lo + 1, static_cast<int64_t>(std::ceil(mean_len * 1.5)));
  while (edges.back() < n) {
    const int64_t len = lo + static_cast<int64_t>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
    edges.push_back(std::min<int64_t>(n, edges.back() + len));
  }
  // avoid a trailing sliver shorter than half the minimum
  if (edges.size() > 2 && edges.back() - edges[edges.size() - 2] < lo / 2) {
    edges.erase(edges.end() - 2);
  }
  return edges;
}

std::array<std::vector<double>, 3> corpus_directions(uint64_t seed, int dim) {
  Rng rng = Rng(seed).fork(0xD1EC71045ULL);
  std::array<std::vector<double>, 3> dirs;
  for (auto& d : dirs) {
    d.resize(static_cast<size_t>(dim));
    for (auto& x : d) x = rng.normal();
  }
  // Gram-Schmidt
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < dirs[i].size(); ++k) dot += dirs[i][k] * dirs[j][k];
      for (size_t k = 0; k < dirs[i].size(); ++k) dirs[i][k] -= dot * dirs[j][k];
    }
    double norm = 0.0;
    for (double x : dirs[i]) norm += x * x;
    norm = std::sqrt(std::max(norm, 1e-12));
    for (auto& x : dirs[i]) x /= norm;
  }
  return dirs;
}

}  // namespace

SynthVideo generate_video(const SynthParams& params, uint64_t seed, int index) {
  params.validate();
  const int64_t n = params.n_frames;
  Rng rng = Rng(seed).fork(static_cast<uint64_t>(index) + 1);

  const auto activation = smooth_signal(rng, n, params.smoothness);
  const auto valence = smooth_signal(rng, n, params.smoothness);

  std::vector<double> affect_mag(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    const double a = activation[static_cast<size_t>(i)];
    const double v = valence[static_cast<size_t>(i)];
    affect_mag[static_cast<size_t>(i)] = std::sqrt(0.5 * (a * a + v * v));
  }

  const auto edges = make_segment_edges(rng, n, params.mean_segment_len);
  const size_t n_segments = edges.size() - 1;

  // keyness: blend of independent noise and the segment's mean |affect| rank
  std::vector<double> seg_mag(n_segments);
  std::vector<double> seg_noise(n_segments);
  for (size_t s = 0; s < n_segments; ++s) {
    double acc = 0.0;
    for (int64_t i = edges[s]; i < edges[s + 1]; ++i) acc += affect_mag[static_cast<size_t>(i)];
    seg_mag[s] = acc / static_cast<double>(edges[s + 1] - edges[s]);
    seg_noise[s] = rng.uniform();
  }
  const auto mag_rank = normalized_ranks(seg_mag);
  std::vector<double> keyness(n_segments);
  for (size_t s = 0; s < n_segments; ++s)
    keyness[s] = params.affect_key_coupling * mag_rank[s] +
                 (1.0 - params.affect_key_coupling) * seg_noise[s];

  // take segments in keyness order until the frame budget is closest to target
  std::vector<size_t> order(n_segments);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return keyness[a] > keyness[b]; });
  const double target = params.key_density * static_cast<double>(n);
  std::vector<uint8_t> key(static_cast<size_t>(n), 0);
  int64_t selected = 0;
  for (size_t s : order) {
    const int64_t len = edges[s + 1] - edges[s];
    const double without = std::abs(static_cast<double>(selected) - target);
    const double with = std::abs(static_cast<double>(selected + len) - target);
    if (with >= without) break;
    for (int64_t i = edges[s]; i < edges[s + 1]; ++i) key[static_cast<size_t>(i)] = 1;
    selected += len;
  }

  // face flags: top face_rate fraction of the blended rank score
  std::vector<double> face_noise(static_cast<size_t>(n));
  for (auto& x : face_noise) x = rng.uniform();
  const auto mag_rank_frames = normalized_ranks(affect_mag);
  const auto noise_rank = normalized_ranks(face_noise);
  std::vector<double> face_score(static_cast<size_t>(n));
  for (size_t i = 0; i < face_score.size(); ++i)
    face_score[i] = params.face_affect_corr * mag_rank_frames[i] +
                    (1.0 - params.face_affect_corr) * noise_rank[i];
  std::vector<size_t> face_order(face_score.size());
  std::iota(face_order.begin(), face_order.end(), size_t{0});
  std::stable_sort(face_order.begin(), face_order.end(),
                   [&](size_t a, size_t b) { return face_score[a] > face_score[b]; });
  const auto n_faces = static_cast<size_t>(std::llround(params.face_rate * static_cast<double>(n)));
  std::vector<uint8_t> faces(static_cast<size_t>(n), 0);
  for (size_t i = 0; i < n_faces && i < face_order.size(); ++i) faces[face_order[i]] = 1;

  // features
  MatF feats(n, params.dim);
  const auto dirs = corpus_directions(seed, params.dim);
  const double key_amp = params.separability * params.key_amp_ratio;
  for (int64_t i = 0; i < n; ++i) {
    const double a = activation[static_cast<size_t>(i)];
    const double v = valence[static_cast<size_t>(i)];
    const double z = key[static_cast<size_t>(i)] ? 1.0 : 0.0;
    for (int d = 0; d < params.dim; ++d) {
      const auto di = static_cast<size_t>(d);
      const double value = rng.normal() + key_amp * z * dirs[0][di] +
                           params.separability * (a * dirs[1][di] + v * dirs[2][di]);
      feats(i, d) = static_cast<float>(value);
    }
  }

  // importance follows segment keyness; raters see a noisy copy
  std::vector<double> importance(static_cast<size_t>(n));
  for (size_t s = 0; s < n_segments; ++s)
    for (int64_t i = edges[s]; i < edges[s + 1]; ++i)
      importance[static_cast<size_t>(i)] = std::clamp(keyness[s], 0.0, 1.0);

  SynthVideo video;
  char name[32];
  std::snprintf(name, sizeof(name), "vid%03d", index);
  video.features.video_id = name;
  video.features.data = std::move(feats);
  video.features.fps = 2.0;

  auto& ann = video.annotation;
  ann.video_id = name;
  ann.n_frames = n;
  ann.key_frames = std::move(key);
  ann.importance = importance;
  ann.face_flags = std::move(faces);
  ann.shot_boundaries = edges;
  ann.group = index % params.n_groups;
  for (int r = 0; r < params.n_raters; ++r) {
    std::vector<double> track(static_cast<size_t>(n));
    for (size_t i = 0; i < track.size(); ++i)
      track[i] = std::clamp(importance[i] + params.rater_noise * rng.normal(), 0.0, 1.0);
    ann.rater_tracks.push_back(std::move(track));
  }
  ann.validate();

  video.affect_targets.resize(n, 2);
  for (int64_t i = 0; i < n; ++i) {
    video.affect_targets(i, 0) = static_cast<float>(activation[static_cast<size_t>(i)]);
    video.affect_targets(i, 1) = static_cast<float>(valence[static_cast<size_t>(i)]);
  }
  return video;
}

CorpusManifest generate_synthetic_corpus(const SynthParams& params, uint64_t seed,
                                         const std::filesystem::path& out_dir) {
  params.validate();
  std::filesystem::create_directories(out_dir);

  CorpusManifest manifest;
  manifest.corpus_id = "synth-" + std::to_string(seed);
  manifest.seed = seed;
  manifest.generator_params = params.to_json();
  manifest.root = out_dir;

  for (int i = 0; i < params.n_videos; ++i) {
    SynthVideo video = generate_video(params, seed, i);
    VideoEntry entry;
    entry.id = video.features.video_id;
    entry.feature_path = entry.id + ".avsf";
    entry.annotation_path = entry.id + ".json";
    entry.affect_target_path = entry.id + ".affect.avsf";
    entry.group = video.annotation.group;
    entry.n_frames = params.n_frames;

    write_feature_file(video.features, out_dir / entry.feature_path);
    write_annotation(video.annotation, out_dir / entry.annotation_path);
    write_avsf(video.affect_targets, out_dir / entry.affect_target_path);
    manifest.videos.push_back(std::move(entry));
  }

  write_manifest(manifest, out_dir / "manifest.json");
  return manifest;
}

}  // namespace avsum::data
