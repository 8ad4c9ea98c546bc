#include "avsum/data/folds.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "avsum/rng.hpp"

namespace avsum::data {

FoldPlan make_logo_folds(const CorpusManifest& manifest, std::optional<int> fixed_test_size,
                         uint64_t seed) {
  FoldPlan plan;
  plan.strategy = "logo";

  std::vector<std::string> all_ids;
  all_ids.reserve(manifest.videos.size());
  for (const auto& v : manifest.videos) all_ids.push_back(v.id);

  if (fixed_test_size) {
    const int k = *fixed_test_size;
    require(k >= 1 && static_cast<size_t>(k) <= all_ids.size(),
            "folds: fixed test size out of range");
    Rng rng(seed);
    rng.shuffle(all_ids);
    for (size_t start = 0; start < all_ids.size(); start += static_cast<size_t>(k)) {
      Fold fold;
      const size_t end = std::min(all_ids.size(), start + static_cast<size_t>(k));
      for (size_t i = 0; i < all_ids.size(); ++i)
        (i >= start && i < end ? fold.test_ids : fold.train_ids).push_back(all_ids[i]);
      std::sort(fold.test_ids.begin(), fold.test_ids.end());
      std::sort(fold.train_ids.begin(), fold.train_ids.end());
      plan.folds.push_back(std::move(fold));
    }
    return plan;
  }

  std::map<int, std::vector<std::string>> by_group;
  for (const auto& v : manifest.videos) by_group[v.group].push_back(v.id);
  require(by_group.size() >= 2, "folds: leave-one-group-out needs at least two groups");

  for (const auto& [group, test_ids] : by_group) {
    Fold fold;
    fold.test_ids = test_ids;
    for (const auto& [other, ids] : by_group)
      if (other != group) fold.train_ids.insert(fold.train_ids.end(), ids.begin(), ids.end());
    plan.folds.push_back(std::move(fold));
  }
  return plan;
}

FoldPlan make_ratio_split(const CorpusManifest& manifest, std::array<double, 3> ratios,
                          uint64_t seed) {
  const double total = ratios[0] + ratios[1] + ratios[2];
  require(std::abs(total - 1.0) < 1e-9, "folds: ratios must sum to 1");
  for (double r : ratios) require(r >= 0.0, "folds: negative ratio");

  std::vector<std::string> ids;
  ids.reserve(manifest.videos.size());
  for (const auto& v : manifest.videos) ids.push_back(v.id);
  Rng rng(seed);
  rng.shuffle(ids);

  const auto n = static_cast<double>(ids.size());
  const auto train_end = static_cast<size_t>(std::floor(n * ratios[0]));
  const auto val_end = static_cast<size_t>(std::floor(n * (ratios[0] + ratios[1])));

  Fold fold;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i < train_end)
      fold.train_ids.push_back(ids[i]);
    else if (i < val_end)
      fold.val_ids.push_back(ids[i]);
    else
      fold.test_ids.push_back(ids[i]);
  }
  require(!fold.train_ids.empty(), "folds: empty training split");

  FoldPlan plan;
  plan.strategy = "ratio";
  plan.folds.push_back(std::move(fold));
  return plan;
}

}  // namespace avsum::data
