#pragma once

// Exhaustive searches over small supports: best single tags, index-one
// optical orthogonal codes, and low-aperiodic-correlation headers.

#include <cstdint>
#include <optional>
#include <vector>

#include "qtag/tags.hpp"

namespace qtag {

/// Caps on exhaustive work. Exceeding a cap is reported, never silently
/// truncated.
struct SearchLimits {
  int max_periodic_v = 40;
  std::uint64_t max_candidates = 200'000'000;
  int max_ooc_v = 200;
  int max_ooc_k = 5;
  std::uint64_t max_ooc_nodes = 50'000'000;
  int max_aperiodic_v = 30;
  int max_header_v = 24;
  int max_header_s = 4;
  std::uint64_t max_header_nodes = 50'000'000;
  std::size_t max_witnesses = 16;
};

struct SearchReport {
  int v = 0;
  int k = 0;
  std::optional<int> s;
  /// rho for tag search, codeword count for OOC search, max sidelobe for
  /// header searches.
  int objective = 0;
  /// Tag and header searches: one support per witness, lexicographic order.
  /// OOC and header-set searches: the codewords of the single best code.
  std::vector<Support> witnesses;
  std::uint64_t witness_count = 0;
  std::uint64_t candidates_examined = 0;
  bool exhaustive = false;
  std::optional<int> bound;
  bool bound_met = false;
  /// Header-set search: smallest pairwise distance of the witness.
  std::optional<int> min_distance;
};

/// Maximises the comma-free index over k-subsets of Z_v. Only supports
/// containing 0 are enumerated and one canonical form per translation and
/// reflection class is kept as a witness.
SearchReport search_optimal_tag(int v, int k, const SearchLimits& limits = {});

/// Backtracking over difference packings for a (v,k,1)-OOC with
/// target_size codewords (default: the Johnson bound). If the node budget
/// runs out the best code found is returned with exhaustive == false.
SearchReport search_ooc(int v, int k, std::optional<int> target_size = std::nullopt,
                        const SearchLimits& limits = {});

/// Minimises the largest off-peak aperiodic autocorrelation over all
/// k-subsets of {0..v-1}; ties go to the lexicographically smallest support.
SearchReport search_min_aperiodic_header(int v, int k, const SearchLimits& limits = {});

/// Minimises the largest aperiodic correlation (off-peak auto, every cross
/// shift) over s-sets of k-subsets whose pairwise distance is at least
/// min_distance.
SearchReport search_header_set(int v, int k, int s, int min_distance,
                               const SearchLimits& limits = {});

/// Largest off-peak aperiodic autocorrelation of a support.
int max_aperiodic_sidelobe(const Support& support, int v);

/// Largest aperiodic cross-correlation over every shift.
int max_aperiodic_cross(const Support& a, const Support& b, int v);

}  // namespace qtag
