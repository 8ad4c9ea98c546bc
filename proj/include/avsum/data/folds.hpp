#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avsum/data/manifest.hpp"

namespace avsum::data {

struct Fold {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;  // empty for leave-one-group-out
  std::vector<std::string> test_ids;
};

struct FoldPlan {
  std::vector<Fold> folds;
  std::string strategy;  // "logo" or "ratio"
};

// One fold per group label, test = that group's videos. With
// fixed_test_size set, the corpus is instead shuffled once (seeded) and cut
// into consecutive test chunks of that size, ignoring groups.
FoldPlan make_logo_folds(const CorpusManifest& manifest,
                         std::optional<int> fixed_test_size = std::nullopt,
                         uint64_t seed = 0);

// Single deterministic train/val/test split. Boundaries are the floors of
// the cumulative ratios, e.g. 18 videos at 80/10/10 gives 14/2/2.
FoldPlan make_ratio_split(const CorpusManifest& manifest, std::array<double, 3> ratios,
                          uint64_t seed);

}  // namespace avsum::data
