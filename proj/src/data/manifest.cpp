#include "avsum/data/manifest.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace avsum::data {

using nlohmann::json;

const VideoEntry& CorpusManifest::entry(const std::string& id) const {
  for (const auto& v : videos)
    if (v.id == id) return v;
  throw ValidationError("manifest: unknown video id: " + id);
}

FeatureSequence CorpusManifest::load_features(const VideoEntry& e) const {
  auto seq = read_feature_file(resolve(e.feature_path));
  seq.video_id = e.id;
  return seq;
}

SummaryAnnotation CorpusManifest::load_annotation(const VideoEntry& e) const {
  return read_annotation(resolve(e.annotation_path));
}

MatF CorpusManifest::load_affect_targets(const VideoEntry& e) const {
  require(!e.affect_target_path.empty(),
          "manifest: video " + e.id + " has no affect targets");
  MatF t = read_avsf(resolve(e.affect_target_path));
  require(t.cols() == 2, "manifest: affect targets must be N x 2 for " + e.id);
  return t;
}

void CorpusManifest::validate(bool check_files) const {
  require(!videos.empty(), "manifest: no videos");
  std::set<std::string> ids;
  for (const auto& v : videos) {
    require(ids.insert(v.id).second, "manifest: duplicate video id: " + v.id);
    if (!check_files) continue;
    const auto seq = load_features(v);
    require(seq.n_frames() == v.n_frames,
            "manifest: n_frames mismatch for " + v.id);
    const auto ann = load_annotation(v);
    require(ann.n_frames == v.n_frames,
            "manifest: annotation length mismatch for " + v.id);
    if (!v.affect_target_path.empty()) {
      const auto t = load_affect_targets(v);
      require(t.rows() == v.n_frames, "manifest: affect target length mismatch for " + v.id);
    }
  }
}

void write_manifest(const CorpusManifest& m, const std::filesystem::path& path) {
  json j;
  j["corpus_id"] = m.corpus_id;
  j["seed"] = m.seed;
  if (!m.generator_params.empty()) j["generator_params"] = json::parse(m.generator_params);
  json vids = json::array();
  for (const auto& v : m.videos) {
    json e;
    e["id"] = v.id;
    e["features"] = v.feature_path;
    e["annotations"] = v.annotation_path;
    if (!v.affect_target_path.empty()) e["affect_targets"] = v.affect_target_path;
    e["group"] = v.group;
    e["n_frames"] = v.n_frames;
    vids.push_back(std::move(e));
  }
  j["videos"] = std::move(vids);

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ValidationError("manifest: cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("manifest: cannot open: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("manifest: invalid JSON in " + path.string() + ": " + e.what());
  }

  CorpusManifest m;
  m.root = path.parent_path();
  try {
    m.corpus_id = j.at("corpus_id").get<std::string>();
    m.seed = j.value("seed", uint64_t{0});
    if (j.contains("generator_params")) m.generator_params = j["generator_params"].dump();
    for (const auto& e : j.at("videos")) {
      VideoEntry v;
      v.id = e.at("id").get<std::string>();
      v.feature_path = e.at("features").get<std::string>();
      v.annotation_path = e.at("annotations").get<std::string>();
      v.affect_target_path = e.value("affect_targets", std::string{});
      v.group = e.at("group").get<int>();
      v.n_frames = e.at("n_frames").get<int64_t>();
      m.videos.push_back(std::move(v));
    }
  } catch (const json::exception& e) {
    throw ValidationError("manifest: missing or mistyped field in " + path.string() + ": " +
                          e.what());
  }
  m.validate(false);
  return m;
}

}  // namespace avsum::data
