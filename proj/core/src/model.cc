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

#include "tpd/model.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "tpd/error.h"

namespace tpd {
namespace {

int64_t CheckedAdd(int64_t a, int64_t b) {
  int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kInvalidInstance, "int64 overflow in hour totals");
  }
  return out;
}

}  // namespace

int64_t TeamWindow::HoursUntil(int64_t deadline) const {
  return std::max<int64_t>(0, std::min(end, deadline) - start);
}

std::string_view ModeName(Mode mode) {
  return mode == Mode::kStrict ? "strict" : "collaborative";
}

std::optional<Mode> ParseMode(std::string_view name) {
  if (name == "collaborative") return Mode::kCollaborative;
  if (name == "strict") return Mode::kStrict;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// PhyloTree

PhyloTree PhyloTree::Build(const TreeSpec& spec) {
  const int n = static_cast<int>(spec.parent.size());
  if (n == 0) throw Error(ErrorCode::kInvalidInstance, "empty tree");
  if (spec.weight.size() != spec.parent.size() ||
      spec.label.size() != spec.parent.size()) {
    throw Error(ErrorCode::kInvalidInstance, "tree spec arrays differ in size");
  }
  int root = kNone;
  std::vector<std::vector<VertexId>> kids(n);
  for (int v = 0; v < n; ++v) {
    const VertexId p = spec.parent[v];
    if (p == kNone) {
      if (root != kNone) {
        throw Error(ErrorCode::kInvalidInstance, "tree has several roots");
      }
      root = v;
      continue;
    }
    if (p < 0 || p >= n || p == v) {
      throw Error(ErrorCode::kInvalidInstance, "bad parent index");
    }
    if (spec.weight[v] <= 0) {
      throw Error(ErrorCode::kInvalidInstance,
                  "edge weights must be positive integers");
    }
    kids[p].push_back(v);
  }
  if (root == kNone) throw Error(ErrorCode::kInvalidInstance, "tree has no root");

  // Breadth-first renumbering.
  std::vector<VertexId> order;
  order.reserve(n);
  order.push_back(root);
  for (size_t head = 0; head < order.size(); ++head) {
    for (VertexId c : kids[order[head]]) order.push_back(c);
  }
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kInvalidInstance, "tree is not connected");
  }
  std::vector<VertexId> new_id(n);
  for (int i = 0; i < n; ++i) new_id[order[i]] = i;

  PhyloTree tree;
  tree.parent_.assign(n, kNone);
  tree.weight_.assign(n, 0);
  tree.label_.assign(n, "");
  tree.children_.assign(n, {});
  tree.depth_.assign(n, 0);
  std::set<std::string, std::less<>> seen;
  for (int i = 0; i < n; ++i) {
    const VertexId old = order[i];
    tree.label_[i] = spec.label[old];
    if (i != 0) {
      tree.parent_[i] = new_id[spec.parent[old]];
      tree.weight_[i] = spec.weight[old];
      tree.depth_[i] = tree.depth_[tree.parent_[i]] + 1;
    }
    for (VertexId c : kids[old]) tree.children_[i].push_back(new_id[c]);
    if (kids[old].empty()) {
      if (spec.label[old].empty()) {
        throw Error(ErrorCode::kInvalidInstance, "unlabeled leaf");
      }
      if (!seen.insert(spec.label[old]).second) {
        throw Error(ErrorCode::kDuplicateLeaf,
                    "leaf label '" + spec.label[old] + "' appears twice");
      }
      tree.leaves_.push_back(i);
    } else if (kids[old].size() < 2) {
      throw Error(ErrorCode::kInvalidInstance,
                  "internal vertex with a single child");
    }
  }
  return tree;
}

int64_t PhyloTree::total_weight() const {
  int64_t total = 0;
  for (int v = 1; v < num_vertices(); ++v) total = CheckedAdd(total, weight_[v]);
  return total;
}

int64_t PhyloTree::max_weight() const {
  int64_t best = 0;
  for (int v = 1; v < num_vertices(); ++v) best = std::max(best, weight_[v]);
  return best;
}

bool PhyloTree::IsBinary() const {
  for (const auto& kids : children_) {
    if (!kids.empty() && kids.size() != 2) return false;
  }
  return true;
}

bool PhyloTree::IsStar() const {
  for (int v = 1; v < num_vertices(); ++v) {
    if (!is_leaf(v)) return false;
  }
  return true;
}

std::optional<VertexId> PhyloTree::FindLeaf(std::string_view label) const {
  for (VertexId v : leaves_) {
    if (label_[v] == label) return v;
  }
  return std::nullopt;
}

bool PhyloTree::IsAncestor(VertexId u, VertexId v) const {
  while (depth_[v] > depth_[u]) v = parent_[v];
  return u == v;
}

TreeSpec PhyloTree::ToSpec() const {
  return TreeSpec{parent_, weight_, label_};
}

// ---------------------------------------------------------------------------
// TaxaSet

TaxaSet::TaxaSet(std::vector<TaxonId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

TaxaSet::TaxaSet(std::initializer_list<TaxonId> ids)
    : TaxaSet(std::vector<TaxonId>(ids)) {}

TaxaSet TaxaSet::FromMask(uint64_t mask) {
  TaxaSet out;
  while (mask != 0) {
    out.ids_.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

TaxaSet TaxaSet::Range(int n) {
  TaxaSet out;
  out.ids_.resize(n);
  std::iota(out.ids_.begin(), out.ids_.end(), 0);
  return out;
}

bool TaxaSet::contains(TaxonId x) const {
  return std::binary_search(ids_.begin(), ids_.end(), x);
}

uint64_t TaxaSet::ToMask() const {
  uint64_t mask = 0;
  for (TaxonId x : ids_) mask |= uint64_t{1} << x;
  return mask;
}

// ---------------------------------------------------------------------------
// Instance

Instance Instance::Create(PhyloTree tree,
                          const std::map<std::string, TaxonInfo>& taxa,
                          std::vector<TeamWindow> teams, int64_t target,
                          Mode mode) {
  if (target < 0) {
    throw Error(ErrorCode::kInvalidInstance, "target diversity is negative");
  }
  if (teams.empty()) throw Error(ErrorCode::kInvalidInstance, "no teams");
  for (const TeamWindow& t : teams) {
    if (t.start < 0 || t.end <= t.start) {
      throw Error(ErrorCode::kInvalidInstance,
                  "team window needs 0 <= start < end");
    }
  }
  if (taxa.size() != tree.leaves().size()) {
    throw Error(ErrorCode::kInvalidInstance,
                "taxa table and tree leaves differ in size");
  }
  struct Entry {
    int64_t ex;
    std::string name;
    TaxonInfo info;
    VertexId vertex;
  };
  std::vector<Entry> entries;
  entries.reserve(taxa.size());
  for (const auto& [name, info] : taxa) {
    if (info.rescue_length < 1 || info.extinction_time < 1) {
      throw Error(ErrorCode::kInvalidInstance,
                  "taxon '" + name + "' needs rescue length and extinction "
                  "time >= 1");
    }
    auto v = tree.FindLeaf(name);
    if (!v) {
      throw Error(ErrorCode::kInvalidInstance,
                  "taxon '" + name + "' is not a leaf of the tree");
    }
    entries.push_back({info.extinction_time, name, info, *v});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.ex, a.name) < std::tie(b.ex, b.name);
  });

  Instance out;
  out.vertex_taxon_.assign(tree.num_vertices(), kNone);
  for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
    out.names_.push_back(entries[i].name);
    out.taxa_.push_back(entries[i].info);
    out.taxon_vertex_.push_back(entries[i].vertex);
    out.vertex_taxon_[entries[i].vertex] = i;
  }
  out.tree_ = std::move(tree);
  out.teams_ = std::move(teams);
  out.target_ = target;
  out.mode_ = mode;
  return out;
}

std::optional<TaxonId> Instance::FindTaxon(std::string_view name) const {
  for (int i = 0; i < num_taxa(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

TaxaSet Instance::TaxaByName(std::span<const std::string> names) const {
  std::vector<TaxonId> ids;
  for (const std::string& name : names) {
    auto x = FindTaxon(name);
    if (!x) throw Error(ErrorCode::kUnknownTaxon, "no taxon named '" + name + "'");
    ids.push_back(*x);
  }
  return TaxaSet(std::move(ids));
}

std::vector<std::string> Instance::Names(const TaxaSet& set) const {
  std::vector<std::string> out;
  for (TaxonId x : set) out.push_back(names_.at(x));
  return out;
}

std::map<std::string, TaxonInfo> Instance::TaxaMap() const {
  std::map<std::string, TaxonInfo> out;
  for (int i = 0; i < num_taxa(); ++i) out[names_[i]] = taxa_[i];
  return out;
}

Instance Instance::WithTarget(int64_t target) const {
  if (target < 0) {
    throw Error(ErrorCode::kInvalidInstance, "target diversity is negative");
  }
  Instance out = *this;
  out.target_ = target;
  return out;
}

Instance Instance::WithMode(Mode mode) const {
  Instance out = *this;
  out.mode_ = mode;
  return out;
}

Instance Instance::WithTeams(std::vector<TeamWindow> teams) const {
  return Create(tree_, TaxaMap(), std::move(teams), target_, mode_);
}

// ---------------------------------------------------------------------------
// Diversity

int64_t PhylogeneticDiversity(const Instance& instance, const TaxaSet& set) {
  const PhyloTree& tree = instance.tree();
  std::vector<char> covered(tree.num_vertices(), 0);
  for (TaxonId x : set) {
    if (x < 0 || x >= instance.num_taxa()) {
      throw Error(ErrorCode::kUnknownTaxon,
                  "taxon id " + std::to_string(x) + " out of range");
    }
    covered[instance.taxon_vertex(x)] = 1;
  }
  int64_t total = 0;
  for (VertexId v = tree.num_vertices() - 1; v >= 1; --v) {
    if (covered[v]) {
      total += tree.weight(v);
      covered[tree.parent(v)] = 1;
    }
  }
  return total;
}

int64_t PhylogeneticDiversity(const PhyloTree& tree,
                              std::span<const std::string> labels) {
  std::vector<char> covered(tree.num_vertices(), 0);
  for (const std::string& label : labels) {
    auto v = tree.FindLeaf(label);
    if (!v) throw Error(ErrorCode::kUnknownTaxon, "no leaf named '" + label + "'");
    covered[*v] = 1;
  }
  int64_t total = 0;
  for (VertexId v = tree.num_vertices() - 1; v >= 1; --v) {
    if (covered[v]) {
      total += tree.weight(v);
      covered[tree.parent(v)] = 1;
    }
  }
  return total;
}

DiversityEvaluator::DiversityEvaluator(const Instance& instance) {
  if (instance.num_taxa() > 64) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "bitmask diversity needs at most 64 taxa");
  }
  const PhyloTree& tree = instance.tree();
  offspring_.assign(tree.num_vertices(), 0);
  weight_.assign(tree.num_vertices(), 0);
  for (VertexId v = tree.num_vertices() - 1; v >= 0; --v) {
    const TaxonId x = instance.vertex_taxon(v);
    if (x != kNone) offspring_[v] |= uint64_t{1} << x;
    if (v > 0) offspring_[tree.parent(v)] |= offspring_[v];
    weight_[v] = tree.weight(v);
  }
}

int64_t DiversityEvaluator::operator()(uint64_t mask) const {
  int64_t total = 0;
  for (size_t v = 1; v < offspring_.size(); ++v) {
    if (offspring_[v] & mask) total += weight_[v];
  }
  return total;
}

// ---------------------------------------------------------------------------
// Derived tables

DerivedIndex BuildDerivedIndex(const Instance& instance) {
  DerivedIndex idx;
  const int n = instance.num_taxa();
  idx.num_taxa = n;
  idx.class_of.assign(n, 0);
  idx.rescue_length.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    const TaxonInfo& info = instance.taxon(x);
    if (info.rescue_length < 1 || info.extinction_time < 1) {
      throw Error(ErrorCode::kInvalidInstance, "bad taxon attributes");
    }
    idx.rescue_length[x] = info.rescue_length;
    if (idx.ex_values.empty() || idx.ex_values.back() != info.extinction_time) {
      if (!idx.ex_values.empty() && idx.ex_values.back() > info.extinction_time) {
        throw Error(ErrorCode::kInvalidInstance, "taxa are not in canonical order");
      }
      if (!idx.ex_values.empty()) idx.class_end.push_back(x);
      idx.ex_values.push_back(info.extinction_time);
    }
    idx.class_of[x] = static_cast<int>(idx.ex_values.size()) - 1;
    idx.max_ell = std::max(idx.max_ell, info.rescue_length);
  }
  if (n > 0) idx.class_end.push_back(n);
  idx.num_classes = static_cast<int>(idx.ex_values.size());
  idx.max_ex = idx.ex_values.empty() ? 0 : idx.ex_values.back();

  const auto teams = instance.teams();
  idx.capacity.assign(idx.num_classes, 0);
  idx.team_capacity.assign(teams.size(), std::vector<int64_t>(idx.num_classes, 0));
  for (size_t i = 0; i < teams.size(); ++i) {
    if (teams[i].start < 0 || teams[i].end <= teams[i].start) {
      throw Error(ErrorCode::kInvalidInstance, "bad team window");
    }
    for (int j = 0; j < idx.num_classes; ++j) {
      const int64_t h = teams[i].HoursUntil(idx.ex_values[j]);
      idx.team_capacity[i][j] = h;
      idx.capacity[j] = CheckedAdd(idx.capacity[j], h);
    }
  }
  idx.prefix_length.assign(idx.num_classes, 0);
  idx.deficit.assign(idx.num_classes, 0);
  int64_t running = 0;
  for (int j = 0; j < idx.num_classes; ++j) {
    for (int x = idx.class_begin(j); x < idx.class_end[j]; ++x) {
      running = CheckedAdd(running, idx.rescue_length[x]);
    }
    idx.prefix_length[j] = running;
    idx.deficit[j] = running - idx.capacity[j];
  }
  idx.distinct_lengths = idx.rescue_length;
  std::sort(idx.distinct_lengths.begin(), idx.distinct_lengths.end());
  idx.distinct_lengths.erase(
      std::unique(idx.distinct_lengths.begin(), idx.distinct_lengths.end()),
      idx.distinct_lengths.end());
  idx.total_pd = instance.tree().total_weight();
  idx.max_omega = instance.tree().max_weight();
  idx.target = instance.target_diversity();
  idx.dbar = idx.total_pd - idx.target;
  return idx;
}

bool IsSavableAlone(const Instance& instance, const DerivedIndex& index,
                    TaxonId x) {
  const int j = index.class_of[x];
  const int64_t need = index.rescue_length[x];
  if (instance.mode() == Mode::kCollaborative) return need <= index.capacity[j];
  for (const auto& per_team : index.team_capacity) {
    if (need <= per_team[j]) return true;
  }
  return false;
}

TrivialityReport ClassifyTrivial(const Instance& instance,
                                 const DerivedIndex& index) {
  TrivialityReport report;
  for (TaxonId x = 0; x < index.num_taxa; ++x) {
    if (!IsSavableAlone(instance, index, x)) report.unsavable.push_back(x);
  }
  if (index.target == 0) {
    report.kind = Triviality::kTrivialYes;
  } else if (index.target > index.total_pd) {
    report.kind = Triviality::kTrivialNo;
  }
  return report;
}

}  // namespace tpd
