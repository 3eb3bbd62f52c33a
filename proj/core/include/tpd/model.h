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

// Core data model: weighted rooted X-trees, taxa with rescue lengths and
// extinction times, team work windows, and the per-instance derived tables
// that every solver shares.
//
// Conventions used throughout the library:
//  * Vertices are renumbered in breadth-first order, root = 0. The edge
//    entering vertex v is identified with v, so edges are 1..V-1 and the
//    canonical edge order is the vertex order.
//  * Taxa are numbered 0..n-1 in canonical order: by extinction time, then
//    by label. Every "survive by class j" set is therefore a prefix.
//  * Extinction classes are 0-based here. Timeslots are 1-based integers and
//    a team with window (s, e] works the slots s+1..e.

#ifndef TPD_MODEL_H_
#define TPD_MODEL_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tpd {

using TaxonId = int;
using VertexId = int;
inline constexpr int kNone = -1;

struct TaxonInfo {
  int64_t rescue_length = 1;
  int64_t extinction_time = 1;

  bool operator==(const TaxonInfo&) const = default;
};

struct TeamWindow {
  int64_t start = 0;
  int64_t end = 1;

  // Slots of this team that lie at or before `deadline`.
  int64_t HoursUntil(int64_t deadline) const;
  bool Covers(int64_t slot) const { return start < slot && slot <= end; }

  bool operator==(const TeamWindow&) const = default;
};

enum class Mode { kCollaborative, kStrict };

std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);

// Unvalidated tree description in arbitrary vertex numbering.
struct TreeSpec {
  std::vector<VertexId> parent;    // kNone marks the root
  std::vector<int64_t> weight;     // weight of the edge entering the vertex
  std::vector<std::string> label;  // required on leaves
};

class PhyloTree {
 public:
  PhyloTree() = default;

  // Throws kInvalidInstance unless the spec describes a rooted tree with
  // positive edge weights, internal out-degree >= 2, and non-empty leaf
  // labels; kDuplicateLeaf on repeated labels. Children keep the relative
  // order of their original ids.
  static PhyloTree Build(const TreeSpec& spec);

  int num_vertices() const { return static_cast<int>(parent_.size()); }
  int num_edges() const { return num_vertices() - 1; }
  VertexId root() const { return 0; }
  VertexId parent(VertexId v) const { return parent_[v]; }
  int64_t weight(VertexId v) const { return weight_[v]; }
  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  bool is_leaf(VertexId v) const { return children_[v].empty(); }
  const std::string& label(VertexId v) const { return label_[v]; }
  std::span<const VertexId> leaves() const { return leaves_; }
  int depth(VertexId v) const { return depth_[v]; }

  int64_t total_weight() const;
  int64_t max_weight() const;
  // Every internal vertex, the root included, has exactly two children.
  bool IsBinary() const;
  // The root is the only internal vertex.
  bool IsStar() const;
  std::optional<VertexId> FindLeaf(std::string_view label) const;
  // True when u lies on the path from the root to v (u == v included).
  bool IsAncestor(VertexId u, VertexId v) const;
  TreeSpec ToSpec() const;

  bool operator==(const PhyloTree&) const = default;

 private:
  std::vector<VertexId> parent_;
  std::vector<int64_t> weight_;
  std::vector<std::string> label_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<VertexId> leaves_;
  std::vector<int> depth_;
};

// Sorted, duplicate-free list of taxon ids.
class TaxaSet {
 public:
  TaxaSet() = default;
  explicit TaxaSet(std::vector<TaxonId> ids);
  TaxaSet(std::initializer_list<TaxonId> ids);

  static TaxaSet FromMask(uint64_t mask);
  static TaxaSet Range(int n);

  bool contains(TaxonId x) const;
  bool empty() const { return ids_.empty(); }
  int size() const { return static_cast<int>(ids_.size()); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<TaxonId>& ids() const { return ids_; }
  // Requires every id < 64.
  uint64_t ToMask() const;

  bool operator==(const TaxaSet&) const = default;
  auto operator<=>(const TaxaSet&) const = default;

 private:
  std::vector<TaxonId> ids_;
};

class Instance {
 public:
  Instance() = default;

  // Validates and canonicalizes. Every leaf of `tree` must have an entry in
  // `taxa` and vice versa. Throws kInvalidInstance.
  static Instance Create(PhyloTree tree,
                         const std::map<std::string, TaxonInfo>& taxa,
                         std::vector<TeamWindow> teams, int64_t target,
                         Mode mode);

  const PhyloTree& tree() const { return tree_; }
  int num_taxa() const { return static_cast<int>(taxa_.size()); }
  int num_teams() const { return static_cast<int>(teams_.size()); }
  const TaxonInfo& taxon(TaxonId x) const { return taxa_[x]; }
  std::span<const TaxonInfo> taxa() const { return taxa_; }
  const std::string& taxon_name(TaxonId x) const { return names_[x]; }
  VertexId taxon_vertex(TaxonId x) const { return taxon_vertex_[x]; }
  // kNone for internal vertices.
  TaxonId vertex_taxon(VertexId v) const { return vertex_taxon_[v]; }
  std::span<const TeamWindow> teams() const { return teams_; }
  int64_t target_diversity() const { return target_; }
  Mode mode() const { return mode_; }

  std::optional<TaxonId> FindTaxon(std::string_view name) const;
  // Throws kUnknownTaxon.
  TaxaSet TaxaByName(std::span<const std::string> names) const;
  std::vector<std::string> Names(const TaxaSet& set) const;
  std::map<std::string, TaxonInfo> TaxaMap() const;

  Instance WithTarget(int64_t target) const;
  Instance WithMode(Mode mode) const;
  Instance WithTeams(std::vector<TeamWindow> teams) const;

  bool operator==(const Instance&) const = default;

 private:
  PhyloTree tree_;
  std::vector<std::string> names_;
  std::vector<TaxonInfo> taxa_;
  std::vector<VertexId> taxon_vertex_;
  std::vector<TaxonId> vertex_taxon_;
  std::vector<TeamWindow> teams_;
  int64_t target_ = 0;
  Mode mode_ = Mode::kCollaborative;
};

// Sum of weights of edges with at least one offspring in `set`.
// Throws kUnknownTaxon for ids outside the instance.
int64_t PhylogeneticDiversity(const Instance& instance, const TaxaSet& set);
int64_t PhylogeneticDiversity(const PhyloTree& tree,
                              std::span<const std::string> labels);

// Fast diversity of taxon bitmasks, for instances with at most 64 taxa.
class DiversityEvaluator {
 public:
  explicit DiversityEvaluator(const Instance& instance);

  int64_t operator()(uint64_t mask) const;
  // Taxa below each edge, indexed by head vertex.
  uint64_t offspring(VertexId v) const { return offspring_[v]; }

 private:
  std::vector<uint64_t> offspring_;
  std::vector<int64_t> weight_;
};

// Tables derived once per instance. Class indices are 0-based.
struct DerivedIndex {
  int num_taxa = 0;
  int num_classes = 0;
  std::vector<int64_t> ex_values;       // strictly increasing
  std::vector<int> class_of;            // per taxon
  std::vector<int> class_end;           // taxa [0, class_end[j]) survive to j
  std::vector<int64_t> rescue_length;   // per taxon
  std::vector<int64_t> capacity;        // person-hours usable by ex_values[j]
  std::vector<std::vector<int64_t>> team_capacity;  // [team][class]
  std::vector<int64_t> prefix_length;   // total rescue length of taxa [0, class_end[j])
  std::vector<int64_t> deficit;         // prefix_length - capacity, may be negative
  std::vector<int64_t> distinct_lengths;
  int64_t total_pd = 0;
  int64_t target = 0;
  int64_t dbar = 0;                     // total_pd - target
  int64_t max_ex = 0;
  int64_t max_ell = 0;
  int64_t max_omega = 0;

  int class_begin(int j) const { return j == 0 ? 0 : class_end[j - 1]; }

  bool operator==(const DerivedIndex&) const = default;
};

// Throws kInvalidInstance on int64 overflow.
DerivedIndex BuildDerivedIndex(const Instance& instance);

// True when some team alone can rescue x (strict mode) or the teams together
// can (collaborative mode).
bool IsSavableAlone(const Instance& instance, const DerivedIndex& index,
                    TaxonId x);

enum class Triviality { kTrivialYes, kTrivialNo, kNonTrivial };

struct TrivialityReport {
  Triviality kind = Triviality::kNonTrivial;
  TaxaSet witness;                 // set for kTrivialYes
  std::vector<TaxonId> unsavable;  // taxa no feasible set can contain
};

TrivialityReport ClassifyTrivial(const Instance& instance,
                                 const DerivedIndex& index);

}  // namespace tpd

#endif  // TPD_MODEL_H_
