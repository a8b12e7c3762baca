#include "qtag/syncdec.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qtag/error.hpp"

namespace qtag {

std::string_view to_string(SyncStatus status) noexcept {
  switch (status) {
    case SyncStatus::Aligned: return "aligned";
    case SyncStatus::Misaligned: return "misaligned";
    case SyncStatus::Ambiguous: return "ambiguous";
    case SyncStatus::NoMatch: return "nomatch";
  }
  return "nomatch";
}

int decoding_radius(int rho) { return rho >= 1 ? (rho - 1) / 2 : -1; }

SyncResult nearest_shift_decode(const TagVector& outcome, const QuantumTag& tag) {
  if (tag.rho < 1) {
    throw Error(ErrorCode::NotSelfSynchronizing,
                "tag has comma-free index " + std::to_string(tag.rho));
  }
  if (outcome.length() != tag.v) {
    throw Error(ErrorCode::LengthMismatch, "outcome length " + std::to_string(outcome.length()) +
                                               " differs from tag length " + std::to_string(tag.v));
  }
  // distance(outcome, pi^t x) = |y| + k - 2 |{s in T : y[s + t] = 1}|
  const int weight = outcome.weight();
  SyncResult r;
  r.distance = std::numeric_limits<int>::max();
  for (int t = 0; t < tag.v; ++t) {
    int overlap = 0;
    for (int s : tag.support) overlap += outcome[(s + t) % tag.v];
    const int dist = weight + tag.k - 2 * overlap;
    if (dist < r.distance) {
      r.distance = dist;
      r.candidates.assign(1, t);
    } else if (dist == r.distance) {
      r.candidates.push_back(t);
    }
  }
  r.shift = r.candidates.front();
  if (r.candidates.size() > 1) {
    r.status = SyncStatus::Ambiguous;
  } else if (r.distance > decoding_radius(tag.rho)) {
    r.status = SyncStatus::NoMatch;
  } else {
    r.status = r.shift == 0 ? SyncStatus::Aligned : SyncStatus::Misaligned;
  }
  return r;
}

SyncResult orthogonal_decode(const TagVector& outcome, const OrthogonalTagSet& tagset) {
  if (tagset.rho_c < 1 || tagset.d < 1 || tagset.tags.empty()) {
    throw Error(ErrorCode::InvalidArgument, "tag set needs positive rho_c and d");
  }
  if (outcome.length() != tagset.v) {
    throw Error(ErrorCode::LengthMismatch, "outcome length " + std::to_string(outcome.length()) +
                                               " differs from tag length " +
                                               std::to_string(tagset.v));
  }
  const int radius = decoding_radius(std::min(tagset.rho_c, tagset.d));
  SyncResult r;
  r.distance = std::numeric_limits<int>::max();
  for (int j = 0; j < tagset.size(); ++j) {
    const int dist = hamming_distance(outcome, tagset.tags[static_cast<std::size_t>(j)].vector());
    if (dist < r.distance) {
      r.distance = dist;
      r.candidates.assign(1, j);
    } else if (dist == r.distance) {
      r.candidates.push_back(j);
    }
  }
  if (r.distance > radius) {
    r.status = SyncStatus::NoMatch;
  } else if (r.candidates.size() > 1) {
    r.status = SyncStatus::Ambiguous;
  } else {
    r.status = SyncStatus::Aligned;
    r.digit = r.candidates.front();
  }
  return r;
}

std::vector<std::size_t> locate_headers(std::span<const std::uint8_t> stream, const QuantumTag& header,
                                        HeaderMode mode, int delta) {
  if (delta < 1) throw Error(ErrorCode::InvalidArgument, "delta must be at least 1");
  const auto v = static_cast<std::size_t>(header.v);
  std::vector<std::size_t> found;
  if (stream.size() < v) return found;

  const int radius = (delta - 1) / 2;
  const std::size_t k = header.support.size();
  // Window weight slides; the overlap with the tag positions is recomputed.
  int window_weight = 0;
  for (std::size_t i = 0; i < v; ++i) window_weight += stream[i] ? 1 : 0;
  for (std::size_t p = 0; p + v <= stream.size(); ++p) {
    if (p > 0) {
      window_weight += (stream[p + v - 1] ? 1 : 0) - (stream[p - 1] ? 1 : 0);
    }
    std::size_t hits = 0;
    for (int s : header.support) hits += stream[p + static_cast<std::size_t>(s)] ? 1 : 0;
    const bool match = mode == HeaderMode::ErasureOnly
                           ? hits == k
                           : window_weight + static_cast<int>(k) - 2 * static_cast<int>(hits) <= radius;
    if (match) found.push_back(p);
  }
  return found;
}

std::vector<std::size_t> naive_boundary_scan(std::span<const std::uint8_t> stream) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (stream[i]) out.push_back(i);
  }
  return out;
}

}  // namespace qtag
