#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "avsum/data/annotation.hpp"
#include "avsum/data/avsf.hpp"

namespace avsum::data {

struct VideoEntry {
  std::string id;
  std::string feature_path;      // relative to the manifest directory
  std::string annotation_path;   // relative to the manifest directory
  std::string affect_target_path;  // optional N x 2 AVSF ([activation, valence])
  int group = 0;
  int64_t n_frames = 0;
};

struct CorpusManifest {
  std::string corpus_id;
  std::vector<VideoEntry> videos;
  uint64_t seed = 0;              // synthetic provenance
  std::string generator_params;   // serialized params JSON, empty for ingested corpora
  std::filesystem::path root;     // directory the manifest was loaded from

  const VideoEntry& entry(const std::string& id) const;
  std::filesystem::path resolve(const std::string& rel) const { return root / rel; }

  FeatureSequence load_features(const VideoEntry& e) const;
  SummaryAnnotation load_annotation(const VideoEntry& e) const;
  MatF load_affect_targets(const VideoEntry& e) const;

  // id uniqueness plus header validation of every referenced file
  void validate(bool check_files = true) const;
};

void write_manifest(const CorpusManifest& m, const std::filesystem::path& path);
CorpusManifest read_manifest(const std::filesystem::path& path);

}  // namespace avsum::data
