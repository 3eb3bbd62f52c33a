// Copyright 2026 The tpd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tpd/generators.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tpd/error.h"
#include "tpd/rng.h"

namespace tpd {
namespace {

int64_t Draw(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(UniformBelow(rng, static_cast<uint64_t>(hi - lo + 1)));
}

// Appends a subtree over `leaves` (taxon indices) below `parent`.
void Split(std::mt19937_64& rng, const GeneratorParams& p, std::vector<int> leaves,
           int parent, TreeSpec* spec) {
  auto add = [&](int under, const std::string& label) {
    spec->parent.push_back(under);
    spec->weight.push_back(under == kNone ? 0 : Draw(rng, 1, p.max_omega));
    spec->label.push_back(label);
    return static_cast<int>(spec->parent.size()) - 1;
  };
  if (leaves.size() == 1) {
    add(parent, "x" + std::to_string(leaves[0] + 1));
    return;
  }
  const int here = add(parent, "");
  const int n = static_cast<int>(leaves.size());
  // Shuffle, then cut into consecutive groups.
  for (int i = n - 1; i > 0; --i) {
    std::swap(leaves[i], leaves[UniformBelow(rng, i + 1)]);
  }
  int parts = 2;
  if (p.shape == TreeShape::kRandomMultifurcating) {
    parts = static_cast<int>(Draw(rng, 2, std::min(n, 4)));
  }
  std::vector<int> cuts;
  {
    std::vector<int> positions(n - 1);
    std::iota(positions.begin(), positions.end(), 1);
    for (int i = 0; i < parts - 1; ++i) {
      const int j = i + static_cast<int>(UniformBelow(rng, positions.size() - i));
      std::swap(positions[i], positions[j]);
      cuts.push_back(positions[i]);
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(n);
  int from = 0;
  for (int cut : cuts) {
    Split(rng, p, std::vector<int>(leaves.begin() + from, leaves.begin() + cut), here, spec);
    from = cut;
  }
}

TreeSpec RandomTree(std::mt19937_64& rng, const GeneratorParams& p) {
  TreeSpec spec;
  auto add = [&](int under, const std::string& label) {
    spec.parent.push_back(under);
    spec.weight.push_back(under == kNone ? 0 : Draw(rng, 1, p.max_omega));
    spec.label.push_back(label);
    return static_cast<int>(spec.parent.size()) - 1;
  };
  const int n = p.num_taxa;
  switch (p.shape) {
    case TreeShape::kStar: {
      const int root = add(kNone, "");
      for (int i = 0; i < n; ++i) add(root, "x" + std::to_string(i + 1));
      break;
    }
    case TreeShape::kCaterpillar: {
      int spine = add(kNone, "");
      for (int i = 0; i < n - 2; ++i) {
        add(spine, "x" + std::to_string(i + 1));
        spine = add(spine, "");
      }
      add(spine, "x" + std::to_string(n - 1));
      add(spine, "x" + std::to_string(n));
      break;
    }
    case TreeShape::kRandomBinary:
    case TreeShape::kRandomMultifurcating: {
      std::vector<int> leaves(n);
      std::iota(leaves.begin(), leaves.end(), 0);
      Split(rng, p, leaves, kNone, &spec);
      break;
    }
  }
  return spec;
}

}  // namespace

std::string_view TreeShapeName(TreeShape shape) {
  switch (shape) {
    case TreeShape::kStar: return "star";
    case TreeShape::kCaterpillar: return "caterpillar";
    case TreeShape::kRandomBinary: return "random-binary";
    case TreeShape::kRandomMultifurcating: return "random-multifurcating";
  }
  return "";
}

std::optional<TreeShape> ParseTreeShape(std::string_view name) {
  for (TreeShape s : {TreeShape::kStar, TreeShape::kCaterpillar,
                      TreeShape::kRandomBinary, TreeShape::kRandomMultifurcating}) {
    if (TreeShapeName(s) == name) return s;
  }
  return std::nullopt;
}

Instance GenerateRandomInstance(const GeneratorParams& p, uint64_t seed) {
  if (p.num_taxa < 2 || p.num_teams < 1 || p.max_ex < 1 || p.max_ell < 1 ||
      p.max_omega < 1 || p.savable_probability < 0 || p.savable_probability > 1) {
    throw Error(ErrorCode::kBadParams, "generator parameters out of range");
  }
  std::mt19937_64 rng(SplitMix64(seed));
  const PhyloTree tree = PhyloTree::Build(RandomTree(rng, p));
  std::map<std::string, TaxonInfo> taxa;
  for (int i = 0; i < p.num_taxa; ++i) {
    TaxonInfo info;
    info.rescue_length = Draw(rng, 1, p.max_ell);
    if (Chance(rng, p.savable_probability) && info.rescue_length <= p.max_ex) {
      info.extinction_time = Draw(rng, info.rescue_length, p.max_ex);
    } else {
      info.extinction_time = Draw(rng, 1, p.max_ex);
    }
    taxa["x" + std::to_string(i + 1)] = info;
  }
  std::vector<TeamWindow> teams;
  for (int i = 0; i < p.num_teams; ++i) {
    const int64_t start = Draw(rng, 0, p.max_ex - 1);
    teams.push_back({start, Draw(rng, start + 1, p.max_ex)});
  }
  const int64_t total = tree.total_weight();
  const int64_t target = p.target.value_or((total + 1) / 2);
  return Instance::Create(tree, taxa, std::move(teams), target, p.mode);
}

Instance ReduceSubsetSum(std::span<const int64_t> values, int k, int64_t target,
                         std::optional<int64_t> q) {
  if (values.empty() || k < 1 || k > static_cast<int>(values.size()) || target < 0) {
    throw Error(ErrorCode::kBadParams, "need 1 <= k <= |values| and target >= 0");
  }
  int64_t sum = 0;
  for (int64_t z : values) {
    if (z < 1) throw Error(ErrorCode::kBadParams, "values must be positive");
    sum += z;
  }
  const int64_t big = q.value_or(std::max(sum, target) + 1);
  if (big <= std::max(sum, target)) {
    throw Error(ErrorCode::kBadParams, "q must exceed both the value sum and the target");
  }
  const int64_t deadline = target + k * big;
  TreeSpec spec;
  spec.parent.push_back(kNone);
  spec.weight.push_back(0);
  spec.label.push_back("");
  std::map<std::string, TaxonInfo> taxa;
  for (size_t i = 0; i < values.size(); ++i) {
    const std::string name = "x" + std::to_string(i + 1);
    spec.parent.push_back(0);
    spec.weight.push_back(values[i] + big);
    spec.label.push_back(name);
    taxa[name] = TaxonInfo{values[i] + big, deadline};
  }
  if (values.size() == 1) {
    // The root needs two children. The extra leaf can never be rescued
    // (it dies at slot 1 and needs more hours than exist), so the answer is
    // unchanged.
    spec.parent.push_back(0);
    spec.weight.push_back(1);
    spec.label.push_back("pad");
    taxa["pad"] = TaxonInfo{deadline + 1, 1};
  }
  return Instance::Create(PhyloTree::Build(spec), taxa, {TeamWindow{0, deadline}},
                          deadline, Mode::kCollaborative);
}

}  // namespace tpd
