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

#include "tpd/fpt_d.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "tpd/error.h"
#include "tpd/feasibility.h"
#include "tpd/rng.h"
#include "trials.h"

namespace tpd {
namespace {

constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

// Candidates grouped by extinction class.
std::vector<std::vector<TaxonId>> ByClass(const DerivedIndex& index,
                                          std::span<const TaxonId> candidates) {
  std::vector<std::vector<TaxonId>> out(index.num_classes);
  for (TaxonId x : candidates) out[index.class_of[x]].push_back(x);
  return out;
}

void CheckColors(int num_colors) {
  if (num_colors < 0 || num_colors > 30) {
    throw Error(ErrorCode::kDTooLarge, "color count must lie in [0, 30]");
  }
}

// Min total rescue length of a feasible set drawn from classes <= p whose
// colors cover C. Kept across trials to reuse the buffer.
class CollaborativeTable {
 public:
  CollaborativeTable(const DerivedIndex& index, std::span<const TaxonId> candidates)
      : index_(index), by_class_(ByClass(index, candidates)) {}

  bool Run(std::span<const ColorMask> colors, int num_colors, TaxaSet* saved) {
    const int v = index_.num_classes;
    const uint32_t full = (uint32_t{1} << num_colors) - 1;
    table_.assign(static_cast<size_t>(full + 1) * v, kInf);
    for (int p = 0; p < v; ++p) table_[p] = 0;
    for (uint32_t c = 1; c <= full; ++c) {
      int64_t best = kInf;
      for (int p = 0; p < v; ++p) {
        for (TaxonId x : by_class_[p]) {
          if ((colors[x] & c) == 0) continue;
          const int64_t len = At(c & ~colors[x], p) + index_.rescue_length[x];
          if (len <= index_.capacity[p]) best = std::min(best, len);
        }
        table_[static_cast<size_t>(c) * v + p] = best;
      }
    }
    if (At(full, v - 1) >= kInf) return false;
    if (saved != nullptr) *saved = Extract(colors, full, v - 1);
    return true;
  }

 private:
  int64_t At(uint32_t c, int p) const {
    return table_[static_cast<size_t>(c) * index_.num_classes + p];
  }

  TaxaSet Extract(std::span<const ColorMask> colors, uint32_t c, int p) const {
    std::vector<TaxonId> out;
    while (c != 0) {
      const int64_t value = At(c, p);
      if (p > 0 && At(c, p - 1) == value) {
        --p;
        continue;
      }
      TaxonId pick = kNone;
      for (TaxonId x : by_class_[p]) {
        if ((colors[x] & c) != 0 &&
            At(c & ~colors[x], p) + index_.rescue_length[x] == value) {
          pick = x;
          break;
        }
      }
      if (pick == kNone) throw Error(ErrorCode::kInternal, "broken back-pointer");
      out.push_back(pick);
      c &= ~colors[pick];
    }
    return TaxaSet(std::move(out));
  }

  const DerivedIndex& index_;
  std::vector<std::vector<TaxonId>> by_class_;
  std::vector<int64_t> table_;
};

// Strict counterpart: per team, the minimum length of a single-team feasible
// set covering C whose last class is p, then a cover product over teams.
class StrictTable {
 public:
  StrictTable(const DerivedIndex& index, std::span<const TaxonId> candidates,
              const ColoredOptions& options)
      : index_(index), by_class_(ByClass(index, candidates)), options_(options) {}

  bool Run(std::span<const ColorMask> colors, int num_colors,
           std::vector<TaxaSet>* per_team) {
    const int v = index_.num_classes;
    const int teams = static_cast<int>(index_.team_capacity.size());
    if (teams == 0) return false;
    const uint32_t full = (uint32_t{1} << num_colors) - 1;
    const size_t cells = static_cast<size_t>(full + 1) * v * teams;
    exact_.assign(cells, kInf);
    upto_.assign(cells, kInf);
    for (int p = 0; p < v; ++p) {
      for (int i = 0; i < teams; ++i) {
        exact_[Cell(0, p, i)] = 0;
        upto_[Cell(0, p, i)] = 0;
      }
    }
    for (uint32_t c = 1; c <= full; ++c) {
      for (int i = 0; i < teams; ++i) {
        const auto& bound = index_.team_capacity[i];
        int64_t running = kInf;
        for (int p = 0; p < v; ++p) {
          int64_t best = kInf;
          for (TaxonId x : by_class_[p]) {
            if ((colors[x] & c) == 0) continue;
            const uint32_t rest = c & ~colors[x];
            const int64_t ell = index_.rescue_length[x];
            if (!options_.earlier_class_bound) {
              const int64_t len = upto_[Cell(rest, p, i)] + ell;
              if (len <= bound[p]) best = std::min(best, len);
            } else {
              for (int q = 0; q <= p; ++q) {
                const int64_t len = exact_[Cell(rest, q, i)] + ell;
                if (len <= bound[q]) best = std::min(best, len);
              }
            }
          }
          exact_[Cell(c, p, i)] = best;
          running = std::min(running, best);
          upto_[Cell(c, p, i)] = running;
        }
      }
    }
    // Per-team coverability, then the cover product across teams.
    stages_.assign(teams, {});
    std::vector<uint8_t> single(full + 1);
    for (int i = 0; i < teams; ++i) {
      for (uint32_t c = 0; c <= full; ++c) {
        single[c] = upto_[Cell(c, v - 1, i)] < kInf ? 1 : 0;
      }
      stages_[i] = i == 0 ? single
                          : BooleanCoverCombine(stages_[i - 1], single,
                                                num_colors, options_.cover);
    }
    if (!stages_[teams - 1][full]) return false;
    if (per_team != nullptr) *per_team = ExtractAll(colors, full);
    return true;
  }

 private:
  size_t Cell(uint32_t c, int p, int i) const {
    return (static_cast<size_t>(c) * index_.num_classes + p) *
               index_.team_capacity.size() + i;
  }

  bool Covers(uint32_t c, int i) const {
    return upto_[Cell(c, index_.num_classes - 1, i)] < kInf;
  }

  std::vector<TaxaSet> ExtractAll(std::span<const ColorMask> colors,
                                  uint32_t full) const {
    const int teams = static_cast<int>(stages_.size());
    std::vector<TaxaSet> shares(teams);
    uint32_t c = full;
    for (int i = teams - 1; i >= 0; --i) {
      if (i == 0) {
        shares[0] = ExtractTeam(colors, c, 0);
        break;
      }
      // Split c between teams < i and team i.
      uint32_t sub = c;
      while (true) {
        if (stages_[i - 1][sub] && Covers(c & ~sub, i)) break;
        if (sub == 0) throw Error(ErrorCode::kInternal, "broken cover split");
        sub = (sub - 1) & c;
      }
      shares[i] = ExtractTeam(colors, c & ~sub, i);
      c = sub;
    }
    // A taxon picked by two teams stays with the first; subsets of a
    // single-team feasible set remain feasible.
    std::vector<char> taken(index_.num_taxa, 0);
    for (TaxaSet& share : shares) {
      std::vector<TaxonId> kept;
      for (TaxonId x : share) {
        if (!taken[x]) {
          taken[x] = 1;
          kept.push_back(x);
        }
      }
      share = TaxaSet(std::move(kept));
    }
    return shares;
  }

  TaxaSet ExtractTeam(std::span<const ColorMask> colors, uint32_t c, int i) const {
    const int v = index_.num_classes;
    const auto& bound = index_.team_capacity[i];
    int p = 0;
    while (exact_[Cell(c, p, i)] != upto_[Cell(c, v - 1, i)]) ++p;
    std::vector<TaxonId> out;
    while (c != 0) {
      const int64_t value = exact_[Cell(c, p, i)];
      TaxonId pick = kNone;
      int next_p = 0;
      for (TaxonId x : by_class_[p]) {
        if ((colors[x] & c) == 0) continue;
        const uint32_t rest = c & ~colors[x];
        for (int q = 0; q <= p && pick == kNone; ++q) {
          const int64_t len = exact_[Cell(rest, q, i)] + index_.rescue_length[x];
          const int64_t cap = options_.earlier_class_bound ? bound[q] : bound[p];
          if (len == value && len <= cap) {
            pick = x;
            next_p = q;
          }
        }
        if (pick != kNone) break;
      }
      if (pick == kNone) throw Error(ErrorCode::kInternal, "broken back-pointer");
      out.push_back(pick);
      c &= ~colors[pick];
      p = next_p;
    }
    return TaxaSet(std::move(out));
  }

  const DerivedIndex& index_;
  std::vector<std::vector<TaxonId>> by_class_;
  ColoredOptions options_;
  std::vector<int64_t> exact_;
  std::vector<int64_t> upto_;
  std::vector<std::vector<uint8_t>> stages_;
};

std::vector<uint8_t> CoverDirect(std::span<const uint8_t> f,
                                 std::span<const uint8_t> g, uint32_t full) {
  std::vector<uint8_t> h(full + 1, 0);
  for (uint32_t c = 0; c <= full; ++c) {
    uint32_t sub = c;
    while (true) {
      if (f[sub] && g[c & ~sub]) {
        h[c] = 1;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & c;
    }
  }
  return h;
}

std::vector<uint8_t> CoverRanked(std::span<const uint8_t> f,
                                 std::span<const uint8_t> g, int k) {
  const size_t size = size_t{1} << k;
  const size_t ranks = static_cast<size_t>(k) + 1;
  // Counts wrap modulo 2^32. Only ring operations are applied and every
  // final count is at most 2^k < 2^32, so the wrapped results are exact.
  // Layout [mask][rank] keeps the per-mask work contiguous.
  auto transform = [&](std::vector<uint32_t>& t, bool inverse) {
    for (int b = 0; b < k; ++b) {
      const size_t bit = size_t{1} << b;
      for (size_t c = 0; c < size; ++c) {
        if (!(c & bit)) continue;
        uint32_t* dst = &t[c * ranks];
        const uint32_t* src = &t[(c ^ bit) * ranks];
        if (inverse) {
          for (size_t r = 0; r < ranks; ++r) dst[r] -= src[r];
        } else {
          for (size_t r = 0; r < ranks; ++r) dst[r] += src[r];
        }
      }
    }
  };
  // fr[C][r] = #{C' subset of C : |C'| = r, f(C')}.
  auto ranked_zeta = [&](std::span<const uint8_t> src) {
    std::vector<uint32_t> out(size * ranks, 0);
    for (size_t c = 0; c < size; ++c) {
      if (src[c]) out[c * ranks + std::popcount(c)] = 1;
    }
    transform(out, /*inverse=*/false);
    return out;
  };
  std::vector<uint32_t> fr = ranked_zeta(f);
  const std::vector<uint32_t> gr = ranked_zeta(g);
  std::vector<uint32_t> row(ranks);
  for (size_t c = 0; c < size; ++c) {  // ranked product, in place
    const uint32_t* a = &fr[c * ranks];
    const uint32_t* b = &gr[c * ranks];
    for (size_t r = 0; r < ranks; ++r) {
      uint32_t sum = 0;
      for (size_t i = 0; i <= r; ++i) sum += a[i] * b[r - i];
      row[r] = sum;
    }
    std::copy(row.begin(), row.end(), fr.begin() + c * ranks);
  }
  transform(fr, /*inverse=*/true);
  std::vector<uint8_t> h(size, 0);
  for (size_t c = 0; c < size; ++c) h[c] = fr[c * ranks + std::popcount(c)] != 0;
  return h;
}

// Taxa that some feasible set may contain.
std::vector<TaxonId> SavableTaxa(const Instance& instance, const DerivedIndex& index) {
  std::vector<TaxonId> out;
  for (TaxonId x = 0; x < index.num_taxa; ++x) {
    if (IsSavableAlone(instance, index, x)) out.push_back(x);
  }
  return out;
}

// Heaviest edge on the root path of x.
int64_t HeaviestPathEdge(const Instance& instance, TaxonId x) {
  const PhyloTree& tree = instance.tree();
  int64_t best = 0;
  for (VertexId v = instance.taxon_vertex(x); v != tree.root(); v = tree.parent(v)) {
    best = std::max(best, tree.weight(v));
  }
  return best;
}

DColoring RandomColoring(const PhyloTree& tree, int num_colors, uint64_t seed,
                         uint64_t trial, std::vector<int>* f) {
  std::mt19937_64 rng(TrialSeed(seed, trial));
  for (int& color : *f) color = static_cast<int>(UniformBelow(rng, num_colors));
  return ColorEdgesFromHash(tree, num_colors, *f);
}

SolveOutcome SolveByD(const Instance& instance, const RandomizedOptions& options,
                      bool strict) {
  const std::string name = strict ? "fpt-d-strict" : "fpt-d";
  if ((instance.mode() == Mode::kStrict) != strict) {
    throw Error(ErrorCode::kUnsupportedMode,
                name + " does not handle " + std::string(ModeName(instance.mode())) +
                    " instances");
  }
  const DerivedIndex index = BuildDerivedIndex(instance);
  if (auto trivial = TrivialOutcome(instance, index, name)) return *trivial;

  const std::vector<TaxonId> savable = SavableTaxa(instance, index);
  if (PhylogeneticDiversity(instance, TaxaSet(savable)) < index.target) {
    return MakeNo(name);
  }
  for (TaxonId x : savable) {
    if (HeaviestPathEdge(instance, x) >= index.target) {
      std::optional<Schedule> schedule;
      if (strict) schedule = StrictFeasible(instance, TaxaSet{x});
      return MakeYes(instance, index, TaxaSet{x}, std::move(schedule), name);
    }
  }
  if (index.target > options.max_colors || index.target > 30) {
    throw Error(ErrorCode::kDTooLarge,
                "target diversity " + std::to_string(index.target) +
                    " exceeds the color limit");
  }
  const int k = static_cast<int>(index.target);
  const uint64_t planned = TrialCount(k, options.delta);
  const PhyloTree& tree = instance.tree();
  const size_t domain = static_cast<size_t>(index.total_pd);

  auto make_worker = [&] {
    return [&, f = std::vector<int>(domain),
            collab = CollaborativeTable(index, savable),
            strict_table = StrictTable(index, savable, {})](uint64_t t) mutable {
      const DColoring coloring = RandomColoring(tree, k, options.seed, t, &f);
      const auto colors = TaxonColors(instance, coloring);
      return strict ? strict_table.Run(colors, k, nullptr)
                    : collab.Run(colors, k, nullptr);
    };
  };
  const auto hit =
      internal::FirstSuccessfulTrial(planned, options.threads, make_worker);

  SolveOutcome out;
  if (hit) {
    std::vector<int> f(domain);
    const DColoring coloring = RandomColoring(tree, k, options.seed, *hit, &f);
    const auto colors = TaxonColors(instance, coloring);
    if (strict) {
      std::vector<TaxaSet> shares;
      StrictTable(index, savable, {}).Run(colors, k, &shares);
      std::vector<TaxonId> all;
      for (const TaxaSet& s : shares) all.insert(all.end(), s.begin(), s.end());
      out = MakeYes(instance, index, TaxaSet(all),
                    BuildStrictSchedule(instance, shares), name);
    } else {
      TaxaSet saved;
      CollaborativeTable(index, savable).Run(colors, k, &saved);
      out = MakeYes(instance, index, std::move(saved), std::nullopt, name);
    }
    out.trials = *hit + 1;
  } else {
    out = MakeNo(name);
    out.trials = planned;
  }
  out.planned_trials = planned;
  out.seed = options.seed;
  out.delta = options.delta;
  return out;
}

}  // namespace

DColoring ColorEdgesFromHash(const PhyloTree& tree, int num_colors,
                             std::span<const int> f) {
  CheckColors(num_colors);
  const int64_t domain = tree.total_weight();
  if (static_cast<int64_t>(f.size()) != domain) {
    throw Error(ErrorCode::kBadParams, "hash needs one color per weight unit");
  }
  DColoring out;
  out.num_colors = num_colors;
  out.edge_colors.assign(tree.num_vertices(), 0);
  size_t pos = 0;
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    for (int64_t u = 0; u < tree.weight(v); ++u, ++pos) {
      if (f[pos] < 0 || f[pos] >= num_colors) {
        throw Error(ErrorCode::kBadParams, "hash value outside the color range");
      }
      out.edge_colors[v] |= ColorMask{1} << f[pos];
    }
  }
  return out;
}

std::vector<ColorMask> TaxonColors(const Instance& instance,
                                   const DColoring& coloring) {
  const PhyloTree& tree = instance.tree();
  std::vector<ColorMask> path(tree.num_vertices(), 0);
  for (VertexId v = 1; v < tree.num_vertices(); ++v) {
    path[v] = path[tree.parent(v)] | coloring.edge_colors[v];
  }
  std::vector<ColorMask> out(instance.num_taxa());
  for (TaxonId x = 0; x < instance.num_taxa(); ++x) {
    out[x] = path[instance.taxon_vertex(x)];
  }
  return out;
}

std::vector<uint8_t> BooleanCoverCombine(std::span<const uint8_t> f,
                                         std::span<const uint8_t> g,
                                         int num_colors, CoverMethod method) {
  if (num_colors < 0 || num_colors > 30) {
    throw Error(ErrorCode::kDTooLarge, "cover product limited to 30 colors");
  }
  const size_t size = size_t{1} << num_colors;
  if (f.size() != size || g.size() != size) {
    throw Error(ErrorCode::kBadParams, "cover tables must have 2^k entries");
  }
  if (method == CoverMethod::kAuto) {
    method = num_colors >= 13 && num_colors <= 24 ? CoverMethod::kRanked
                                                  : CoverMethod::kDirect;
  }
  if (method == CoverMethod::kRanked) return CoverRanked(f, g, num_colors);
  return CoverDirect(f, g, static_cast<uint32_t>(size - 1));
}

ColoredResult SolveColoredTimePd(const Instance& instance,
                                 const DerivedIndex& index,
                                 const DColoring& coloring,
                                 std::span<const TaxonId> candidates) {
  CheckColors(coloring.num_colors);
  ColoredResult out;
  const auto colors = TaxonColors(instance, coloring);
  out.yes = CollaborativeTable(index, candidates)
                .Run(colors, coloring.num_colors, &out.saved);
  return out;
}

ColoredResult SolveColoredSTimePd(const Instance& instance,
                                  const DerivedIndex& index,
                                  const DColoring& coloring,
                                  std::span<const TaxonId> candidates,
                                  const ColoredOptions& options) {
  CheckColors(coloring.num_colors);
  ColoredResult out;
  const auto colors = TaxonColors(instance, coloring);
  out.yes = StrictTable(index, candidates, options)
                .Run(colors, coloring.num_colors, &out.per_team);
  if (out.yes) {
    std::vector<TaxonId> all;
    for (const TaxaSet& s : out.per_team) all.insert(all.end(), s.begin(), s.end());
    out.saved = TaxaSet(std::move(all));
  }
  return out;
}

uint64_t TrialCount(int exponent, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kBadParams, "delta must lie strictly between 0 and 1");
  }
  const double n = std::ceil(std::exp(static_cast<double>(exponent)) *
                             std::log(1.0 / delta));
  if (n >= 1.8e19) return UINT64_MAX;
  return static_cast<uint64_t>(n);
}

SolveOutcome SolveTimePdByD(const Instance& instance,
                            const RandomizedOptions& options) {
  return SolveByD(instance, options, /*strict=*/false);
}

SolveOutcome SolveSTimePdByD(const Instance& instance,
                             const RandomizedOptions& options) {
  return SolveByD(instance, options, /*strict=*/true);
}

}  // namespace tpd
