#pragma once

// Synchronization decoders over measured outcome bits.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtag/tags.hpp"

namespace qtag {

enum class SyncStatus { Aligned, Misaligned, Ambiguous, NoMatch };

std::string_view to_string(SyncStatus status) noexcept;

struct SyncResult {
  SyncStatus status = SyncStatus::NoMatch;
  /// Decoded cyclic shift t (the window sits t symbols left of alignment);
  /// 0 for Aligned, 1..v-1 for Misaligned.
  int shift = 0;
  /// Every shift (or codeword index, in orthogonal mode) at the minimum
  /// distance, ascending.
  std::vector<int> candidates;
  /// Hamming distance to the decided or nearest codeword.
  int distance = 0;
  /// Codeword index in orthogonal mode.
  std::optional<int> digit;
};

/// Correction radius floor((rho - 1) / 2).
int decoding_radius(int rho);

/// Nearest cyclic shift of the tag vector. A unique nearest shift within the
/// radius decodes; ties at the minimum distance are Ambiguous; a unique
/// nearest shift beyond the radius is NoMatch.
SyncResult nearest_shift_decode(const TagVector& outcome, const QuantumTag& tag);

/// Locate-and-identify with radius floor((min(rho_c, d) - 1) / 2).
SyncResult orthogonal_decode(const TagVector& outcome, const OrthogonalTagSet& tagset);

enum class HeaderMode { General, ErasureOnly };

/// Window starts p (ascending, no wraparound) where the header is found.
/// General: distance to the tag vector at most floor((delta - 1) / 2).
/// ErasureOnly: every tag position reads 1; sound when a window holds at
/// most delta - 1 erasures.
std::vector<std::size_t> locate_headers(std::span<const std::uint8_t> stream, const QuantumTag& header,
                                        HeaderMode mode, int delta);

/// Every position reading 1, taken as a frame start.
std::vector<std::size_t> naive_boundary_scan(std::span<const std::uint8_t> stream);

}  // namespace qtag
