#pragma once

// Simulated framed qutrit streams: only the binary measurement outcome of
// each position is modelled (payload qubit -> 0, marker -> 1), together with
// erasure (0 -> 1) and incursion (1 -> 0) noise, and end-to-end
// synchronization trials and campaigns over it.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtag/syncdec.hpp"
#include "qtag/tags.hpp"

namespace qtag::sim {

enum class Symbol : std::uint8_t { Qubit, Marker };

enum class FrameMode { SingleTag, Orthogonal, Header };

struct FramedSequence {
  FrameMode mode = FrameMode::SingleTag;
  /// Frame length (single tag, orthogonal) or header length (header mode).
  int v = 0;
  std::vector<Symbol> symbols;
  /// Frame start indices; the first is 0.
  std::vector<std::size_t> boundaries;
  /// Codeword index per frame in orthogonal mode.
  std::vector<int> frame_digits;

  std::vector<std::size_t> frame_lengths() const;
};

FramedSequence build_single_tag_sequence(const QuantumTag& tag, std::size_t frame_count);
FramedSequence build_orthogonal_sequence(const OrthogonalTagSet& tagset, const std::vector<int>& digits);
/// Each frame is the header followed by payload_lengths[i] qubits; every
/// payload must be at least as long as the header.
FramedSequence build_header_sequence(const QuantumTag& header,
                                     const std::vector<std::size_t>& payload_lengths);
/// The single-marker baseline: a one-symbol marker before every payload.
FramedSequence build_naive_sequence(const std::vector<std::size_t>& payload_lengths);

/// Noiseless outcome: Qubit -> 0, Marker -> 1.
std::vector<std::uint8_t> measure(std::span<const Symbol> symbols);
inline std::vector<std::uint8_t> measure(const FramedSequence& seq) { return measure(seq.symbols); }

/// Window of length v starting r symbols right of boundaries[frame] (r < 0:
/// to the left).
struct Window {
  std::size_t start = 0;
  int length = 0;
  long misalignment = 0;
  std::size_t frame = 0;
};

/// Uses the first frame for which the shifted window fits in the stream.
Window extract_window(const FramedSequence& seq, long r);

enum class NoiseMode { Iid, Adversarial };

struct NoiseConfig {
  NoiseMode mode = NoiseMode::Iid;
  double p_erasure = 0.0;
  double p_incursion = 0.0;
  int e_erasures = 0;
  int e_incursions = 0;
  /// Adversarial mode places exactly (e_erasures, e_incursions) errors in
  /// every consecutive block of this many positions; 0 means one block.
  std::size_t window_length = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct NoisyOutcome {
  std::vector<std::uint8_t> bits;
  std::vector<std::size_t> erasures;
  std::vector<std::size_t> incursions;
};

/// Flips outcome bits according to the ground-truth symbol at each position.
/// Iid draws come from a hash of (seed, position), so results do not depend
/// on evaluation order.
NoisyOutcome apply_noise(std::span<const std::uint8_t> outcome, std::span<const Symbol> truth,
                         const NoiseConfig& cfg);

/// Explicit error placement, positions relative to the window.
struct ErrorPattern {
  std::vector<std::size_t> erasures;
  std::vector<std::size_t> incursions;
};

std::uint64_t count_error_patterns(std::span<const Symbol> truth, int e_erasures, int e_incursions);
/// Calls f on every placement of exactly e_erasures erasures on Qubit
/// positions and e_incursions incursions on Marker positions.
void for_each_error_pattern(std::span<const Symbol> truth, int e_erasures, int e_incursions,
                            const std::function<void(const ErrorPattern&)>& f);

enum class DecoderKind { NearestShift, Orthogonal, Header, Naive };

std::string_view to_string(DecoderKind kind) noexcept;

struct Decoder {
  DecoderKind kind = DecoderKind::NearestShift;
  QuantumTag tag;
  std::optional<OrthogonalTagSet> tagset;
  HeaderMode header_mode = HeaderMode::General;
  int delta = 1;

  static Decoder nearest_shift(const QuantumTag& tag);
  static Decoder orthogonal(const OrthogonalTagSet& tagset);
  static Decoder header(const QuantumTag& header, HeaderMode mode, int delta);
  static Decoder naive();
};

struct TrialReport {
  long offset = 0;
  std::optional<SyncResult> result;
  bool success = false;
  int erasures = 0;
  int incursions = 0;
  /// Header and naive modes: reported starts that are not frame starts, and
  /// frame starts that were not reported.
  std::size_t false_headers = 0;
  std::size_t missed = 0;
};

/// Window decoders (nearest shift, orthogonal) look at the window at
/// misalignment r. Header and naive decoders scan the whole stream and r is
/// ignored.
TrialReport run_sync_trial(const FramedSequence& seq, const NoiseConfig& cfg, const Decoder& decoder,
                           long r);
/// Same trial with an explicit error pattern in place of random noise.
TrialReport run_sync_trial(const FramedSequence& seq, const ErrorPattern& pattern,
                           const Decoder& decoder, long r);

struct CampaignCell {
  std::string family;
  FramedSequence seq;
  Decoder decoder;
  NoiseConfig noise;  // seed ignored; trial seeds derive from the master seed
  std::vector<long> offsets{0};
  std::size_t trials = 1;
};

struct CampaignRow {
  std::size_t cell_id = 0;
  std::string family;
  int v = 0;
  int k = 0;
  int rho = 0;
  std::string mode;
  double p_erasure = 0.0;
  double p_incursion = 0.0;
  std::string e_exact;
  long offset = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t nomatch = 0;
  std::uint64_t false_headers = 0;
  double mean_distance = 0.0;

  double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

struct CampaignReport {
  std::vector<CampaignRow> rows;
};

/// Above this many patterns adversarial window cells are sampled instead of
/// enumerated.
inline constexpr std::uint64_t kExhaustivePatternLimit = 1'000'000;

/// Deterministic for a fixed master seed: trial t of offset o in cell c
/// draws its noise from trial_seed(master, c, o, t).
CampaignReport run_campaign(const std::vector<CampaignCell>& cells, std::uint64_t master_seed);

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t offset_index,
                         std::uint64_t trial);

inline constexpr const char* kCampaignCsvHeader =
    "cell_id,tag_family,v,k,rho,mode,p_erasure,p_incursion,e_exact,offset,trials,successes,"
    "ambiguous,nomatch,false_headers";

std::string to_csv(const CampaignReport& report);

}  // namespace qtag::sim
