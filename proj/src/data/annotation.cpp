#include "avsum/data/annotation.hpp"

#include <fstream>
#include <numeric>

#include "json.hpp"

namespace avsum::data {

using nlohmann::json;

void SummaryAnnotation::validate() const {
  require(n_frames >= 1, "annotation: n_frames must be >= 1");
  const auto n = static_cast<size_t>(n_frames);
  require(key_frames.size() == n, "annotation: key_frames length != n_frames");
  require(face_flags.size() == n, "annotation: face_flags length != n_frames");
  if (!importance.empty()) {
    require(importance.size() == n, "annotation: importance length != n_frames");
    for (double v : importance)
      require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "annotation: importance outside [0,1]");
  }
  for (const auto& track : rater_tracks)
    require(track.size() == n, "annotation: rater track length != n_frames");
  for (uint8_t z : key_frames) require(z <= 1, "annotation: key_frames must be binary");
  for (uint8_t f : face_flags) require(f <= 1, "annotation: face_flags must be binary");

  require(shot_boundaries.size() >= 2, "annotation: shot_boundaries must contain 0 and n_frames");
  require(shot_boundaries.front() == 0, "annotation: shot_boundaries must start at 0");
  require(shot_boundaries.back() == n_frames, "annotation: shot_boundaries must end at n_frames");
  for (size_t i = 1; i < shot_boundaries.size(); ++i)
    require(shot_boundaries[i] > shot_boundaries[i - 1],
            "annotation: shot_boundaries must be strictly increasing");
}

int64_t SummaryAnnotation::summary_size() const {
  return std::accumulate(key_frames.begin(), key_frames.end(), int64_t{0});
}

void write_annotation(const SummaryAnnotation& a, const std::filesystem::path& path) {
  a.validate();
  json j;
  j["video_id"] = a.video_id;
  j["n_frames"] = a.n_frames;
  j["key_frames"] = a.key_frames;
  if (!a.importance.empty()) j["importance"] = a.importance;
  if (!a.rater_tracks.empty()) j["rater_tracks"] = a.rater_tracks;
  j["face_flags"] = a.face_flags;
  j["shot_boundaries"] = a.shot_boundaries;
  j["group"] = a.group;

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("annotation: cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

SummaryAnnotation read_annotation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("annotation: cannot open: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("annotation: invalid JSON in " + path.string() + ": " + e.what());
  }

  SummaryAnnotation a;
  try {
    a.video_id = j.at("video_id").get<std::string>();
    a.n_frames = j.at("n_frames").get<int64_t>();
    a.key_frames = j.at("key_frames").get<std::vector<uint8_t>>();
    if (j.contains("importance")) a.importance = j["importance"].get<std::vector<double>>();
    if (j.contains("rater_tracks"))
      a.rater_tracks = j["rater_tracks"].get<std::vector<std::vector<double>>>();
    a.face_flags = j.at("face_flags").get<std::vector<uint8_t>>();
    a.shot_boundaries = j.at("shot_boundaries").get<std::vector<int64_t>>();
    a.group = j.at("group").get<int>();
  } catch (const json::exception& e) {
    throw ValidationError("annotation: missing or mistyped field in " + path.string() + ": " +
                          e.what());
  }
  a.validate();
  return a;
}

}  // namespace avsum::data
