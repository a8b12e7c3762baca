#include "qtag/stream_sim.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "qtag/error.hpp"

namespace qtag::sim {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t a, std::uint64_t b) { return splitmix(a ^ splitmix(b + 0x632be59bd9b4e019ULL)); }

double unit_draw(std::uint64_t seed, std::uint64_t position) {
  return static_cast<double>(combine(seed, position) >> 11) * 0x1.0p-53;
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix(state_++); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

// Picks `count` of `pool` by a partial Fisher-Yates shuffle; result sorted.
std::vector<std::size_t> choose(std::vector<std::size_t> pool, int count, Stream& rng) {
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::uint64_t binomial(std::size_t n, int r) {
  if (r < 0 || static_cast<std::size_t>(r) > n) return 0;
  long double c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<long double>(n - static_cast<std::size_t>(r) + static_cast<std::size_t>(i)) / i;
  return static_cast<std::uint64_t>(c + 0.5L);
}

void place_frame(FramedSequence& seq, const Support& support, int length) {
  const std::size_t start = seq.symbols.size();
  seq.boundaries.push_back(start);
  seq.symbols.resize(start + static_cast<std::size_t>(length), Symbol::Qubit);
  for (int s : support) seq.symbols[start + static_cast<std::size_t>(s)] = Symbol::Marker;
}

bool is_window_decoder(DecoderKind kind) {
  return kind == DecoderKind::NearestShift || kind == DecoderKind::Orthogonal;
}

NoisyOutcome apply_pattern(std::span<const std::uint8_t> outcome, const ErrorPattern& pattern) {
  NoisyOutcome out;
  out.bits.assign(outcome.begin(), outcome.end());
  for (std::size_t p : pattern.erasures) out.bits.at(p) ^= 1;
  for (std::size_t p : pattern.incursions) out.bits.at(p) ^= 1;
  out.erasures = pattern.erasures;
  out.incursions = pattern.incursions;
  return out;
}

void check_decoder(const FramedSequence& seq, const Decoder& decoder) {
  const bool ok = (decoder.kind == DecoderKind::NearestShift && seq.mode == FrameMode::SingleTag) ||
                  (decoder.kind == DecoderKind::Orthogonal && seq.mode == FrameMode::Orthogonal) ||
                  ((decoder.kind == DecoderKind::Header || decoder.kind == DecoderKind::Naive) &&
                   seq.mode == FrameMode::Header);
  if (!ok) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(to_string(decoder.kind)) + " decoder does not fit this sequence");
  }
}

long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

TrialReport score(const FramedSequence& seq, const Decoder& decoder, const Window* window,
                  const NoisyOutcome& noisy) {
  TrialReport report;
  report.erasures = static_cast<int>(noisy.erasures.size());
  report.incursions = static_cast<int>(noisy.incursions.size());
  switch (decoder.kind) {
    case DecoderKind::NearestShift: {
      report.offset = window->misalignment;
      const auto res = nearest_shift_decode(TagVector(noisy.bits), decoder.tag);
      const long expected = floor_mod(-window->misalignment, seq.v);
      report.success = (res.status == SyncStatus::Aligned || res.status == SyncStatus::Misaligned) &&
                       res.shift == expected;
      report.result = res;
      break;
    }
    case DecoderKind::Orthogonal: {
      report.offset = window->misalignment;
      const auto res = orthogonal_decode(TagVector(noisy.bits), *decoder.tagset);
      if (floor_mod(window->misalignment, seq.v) == 0) {
        const auto frame = static_cast<std::size_t>(static_cast<long>(window->frame) +
                                                    window->misalignment / seq.v);
        report.success = res.status == SyncStatus::Aligned && res.digit &&
                         *res.digit == seq.frame_digits.at(frame);
      } else {
        report.success = res.status == SyncStatus::NoMatch;
      }
      report.result = res;
      break;
    }
    case DecoderKind::Header:
    case DecoderKind::Naive: {
      const auto found = decoder.kind == DecoderKind::Header
                             ? locate_headers(noisy.bits, decoder.tag, decoder.header_mode, decoder.delta)
                             : naive_boundary_scan(noisy.bits);
      std::vector<std::size_t> extra;
      std::vector<std::size_t> missing;
      std::set_difference(found.begin(), found.end(), seq.boundaries.begin(), seq.boundaries.end(),
                          std::back_inserter(extra));
      std::set_difference(seq.boundaries.begin(), seq.boundaries.end(), found.begin(), found.end(),
                          std::back_inserter(missing));
      report.false_headers = extra.size();
      report.missed = missing.size();
      report.success = extra.empty() && missing.empty();
      break;
    }
  }
  return report;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::vector<std::size_t> FramedSequence::frame_lengths() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const std::size_t end = i + 1 < boundaries.size() ? boundaries[i + 1] : symbols.size();
    out.push_back(end - boundaries[i]);
  }
  return out;
}

FramedSequence build_single_tag_sequence(const QuantumTag& tag, std::size_t frame_count) {
  if (frame_count == 0) throw Error(ErrorCode::InvalidArgument, "need at least one frame");
  FramedSequence seq;
  seq.mode = FrameMode::SingleTag;
  seq.v = tag.v;
  for (std::size_t i = 0; i < frame_count; ++i) place_frame(seq, tag.support, tag.v);
  return seq;
}

FramedSequence build_orthogonal_sequence(const OrthogonalTagSet& tagset, const std::vector<int>& digits) {
  if (digits.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one frame");
  FramedSequence seq;
  seq.mode = FrameMode::Orthogonal;
  seq.v = tagset.v;
  for (int d : digits) {
    if (d < 0 || d >= tagset.size()) {
      throw Error(ErrorCode::DigitOutOfRange, "digit " + std::to_string(d) + " outside [0, " +
                                                  std::to_string(tagset.size()) + ")");
    }
    place_frame(seq, tagset.tags[static_cast<std::size_t>(d)].support, tagset.v);
    seq.frame_digits.push_back(d);
  }
  return seq;
}

FramedSequence build_header_sequence(const QuantumTag& header,
                                     const std::vector<std::size_t>& payload_lengths) {
  if (payload_lengths.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one frame");
  FramedSequence seq;
  seq.mode = FrameMode::Header;
  seq.v = header.v;
  for (std::size_t len : payload_lengths) {
    if (len < static_cast<std::size_t>(header.v)) {
      throw Error(ErrorCode::GapTooShort, "payload of " + std::to_string(len) +
                                              " symbols is shorter than the header length " +
                                              std::to_string(header.v));
    }
    place_frame(seq, header.support, header.v + static_cast<int>(len));
  }
  return seq;
}

FramedSequence build_naive_sequence(const std::vector<std::size_t>& payload_lengths) {
  return build_header_sequence(QuantumTag::from_support({0}, 1), payload_lengths);
}

std::vector<std::uint8_t> measure(std::span<const Symbol> symbols) {
  std::vector<std::uint8_t> out(symbols.size());
  std::transform(symbols.begin(), symbols.end(), out.begin(),
                 [](Symbol s) { return s == Symbol::Marker ? std::uint8_t{1} : std::uint8_t{0}; });
  return out;
}

Window extract_window(const FramedSequence& seq, long r) {
  const long len = static_cast<long>(seq.symbols.size());
  for (std::size_t i = 0; i < seq.boundaries.size(); ++i) {
    const long start = static_cast<long>(seq.boundaries[i]) + r;
    if (start >= 0 && start + seq.v <= len) {
      return Window{static_cast<std::size_t>(start), seq.v, r, i};
    }
  }
  throw Error(ErrorCode::InvalidArgument,
              "no window at misalignment " + std::to_string(r) + " fits in the stream");
}

void NoiseConfig::validate() const {
  if (!(p_erasure >= 0.0 && p_erasure <= 1.0) || !(p_incursion >= 0.0 && p_incursion <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise probabilities must lie in [0, 1]");
  }
  if (e_erasures < 0 || e_incursions < 0) {
    throw Error(ErrorCode::InvalidArgument, "adversarial error counts must be non-negative");
  }
}

NoisyOutcome apply_noise(std::span<const std::uint8_t> outcome, std::span<const Symbol> truth,
                         const NoiseConfig& cfg) {
  cfg.validate();
  if (outcome.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "outcome and ground truth differ in length");
  }
  NoisyOutcome out;
  out.bits.assign(outcome.begin(), outcome.end());
  if (cfg.mode == NoiseMode::Iid) {
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double u = unit_draw(cfg.seed, i);
      if (truth[i] == Symbol::Qubit && u < cfg.p_erasure) {
        out.bits[i] ^= 1;
        out.erasures.push_back(i);
      } else if (truth[i] == Symbol::Marker && u < cfg.p_incursion) {
        out.bits[i] ^= 1;
        out.incursions.push_back(i);
      }
    }
    return out;
  }

  const std::size_t block = cfg.window_length == 0 ? truth.size() : cfg.window_length;
  for (std::size_t start = 0, index = 0; start < truth.size(); start += block, ++index) {
    const std::size_t end = std::min(truth.size(), start + block);
    std::vector<std::size_t> qubits;
    std::vector<std::size_t> markers;
    for (std::size_t i = start; i < end; ++i) (truth[i] == Symbol::Qubit ? qubits : markers).push_back(i);
    if (qubits.size() < static_cast<std::size_t>(cfg.e_erasures) ||
        markers.size() < static_cast<std::size_t>(cfg.e_incursions)) {
      throw Error(ErrorCode::InvalidArgument,
                  "window at " + std::to_string(start) + " cannot hold " +
                      std::to_string(cfg.e_erasures) + " erasures and " +
                      std::to_string(cfg.e_incursions) + " incursions");
    }
    Stream rng(combine(cfg.seed, index));
    for (std::size_t i : choose(std::move(qubits), cfg.e_erasures, rng)) {
      out.bits[i] ^= 1;
      out.erasures.push_back(i);
    }
    for (std::size_t i : choose(std::move(markers), cfg.e_incursions, rng)) {
      out.bits[i] ^= 1;
      out.incursions.push_back(i);
    }
  }
  std::sort(out.erasures.begin(), out.erasures.end());
  std::sort(out.incursions.begin(), out.incursions.end());
  return out;
}

std::uint64_t count_error_patterns(std::span<const Symbol> truth, int e_erasures, int e_incursions) {
  const auto markers = static_cast<std::size_t>(std::count(truth.begin(), truth.end(), Symbol::Marker));
  return binomial(truth.size() - markers, e_erasures) * binomial(markers, e_incursions);
}

void for_each_error_pattern(std::span<const Symbol> truth, int e_erasures, int e_incursions,
                            const std::function<void(const ErrorPattern&)>& f) {
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> markers;
  for (std::size_t i = 0; i < truth.size(); ++i) (truth[i] == Symbol::Qubit ? qubits : markers).push_back(i);
  if (e_erasures < 0 || e_incursions < 0 || static_cast<std::size_t>(e_erasures) > qubits.size() ||
      static_cast<std::size_t>(e_incursions) > markers.size()) {
    return;
  }

  // Index combinations in lexicographic order.
  auto combos = [](std::size_t n, int r, const std::function<void(const std::vector<std::size_t>&)>& g) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
      g(idx);
      int i = r - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - static_cast<std::size_t>(r) + static_cast<std::size_t>(i)) --i;
      if (i < 0) return;
      ++idx[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
  };

  ErrorPattern pattern;
  combos(qubits.size(), e_erasures, [&](const std::vector<std::size_t>& ei) {
    pattern.erasures.clear();
    for (std::size_t i : ei) pattern.erasures.push_back(qubits[i]);
    combos(markers.size(), e_incursions, [&](const std::vector<std::size_t>& ii) {
      pattern.incursions.clear();
      for (std::size_t i : ii) pattern.incursions.push_back(markers[i]);
      f(pattern);
    });
  });
}

std::string_view to_string(DecoderKind kind) noexcept {
  switch (kind) {
    case DecoderKind::NearestShift: return "sync";
    case DecoderKind::Orthogonal: return "orthogonal";
    case DecoderKind::Header: return "header";
    case DecoderKind::Naive: return "naive";
  }
  return "sync";
}

Decoder Decoder::nearest_shift(const QuantumTag& tag) {
  Decoder d;
  d.kind = DecoderKind::NearestShift;
  d.tag = tag;
  return d;
}

Decoder Decoder::orthogonal(const OrthogonalTagSet& tagset) {
  Decoder d;
  d.kind = DecoderKind::Orthogonal;
  d.tagset = tagset;
  return d;
}

Decoder Decoder::header(const QuantumTag& header, HeaderMode mode, int delta) {
  if (delta < 1) throw Error(ErrorCode::InvalidArgument, "delta must be at least 1");
  Decoder d;
  d.kind = DecoderKind::Header;
  d.tag = header;
  d.header_mode = mode;
  d.delta = delta;
  return d;
}

Decoder Decoder::naive() {
  Decoder d;
  d.kind = DecoderKind::Naive;
  d.tag = QuantumTag::from_support({0}, 1);
  return d;
}

TrialReport run_sync_trial(const FramedSequence& seq, const NoiseConfig& cfg, const Decoder& decoder,
                           long r) {
  check_decoder(seq, decoder);
  if (is_window_decoder(decoder.kind)) {
    const Window w = extract_window(seq, r);
    const auto truth = std::span(seq.symbols).subspan(w.start, static_cast<std::size_t>(w.length));
    const auto clean = measure(truth);
    return score(seq, decoder, &w, apply_noise(clean, truth, cfg));
  }
  const auto clean = measure(seq);
  return score(seq, decoder, nullptr, apply_noise(clean, seq.symbols, cfg));
}

TrialReport run_sync_trial(const FramedSequence& seq, const ErrorPattern& pattern,
                           const Decoder& decoder, long r) {
  check_decoder(seq, decoder);
  if (is_window_decoder(decoder.kind)) {
    const Window w = extract_window(seq, r);
    const auto truth = std::span(seq.symbols).subspan(w.start, static_cast<std::size_t>(w.length));
    return score(seq, decoder, &w, apply_pattern(measure(truth), pattern));
  }
  return score(seq, decoder, nullptr, apply_pattern(measure(seq), pattern));
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t offset_index,
                         std::uint64_t trial) {
  return combine(combine(combine(master, cell), offset_index), trial);
}

CampaignReport run_campaign(const std::vector<CampaignCell>& cells, std::uint64_t master_seed) {
  if (cells.empty()) throw Error(ErrorCode::InvalidArgument, "campaign grid is empty");
  CampaignReport report;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const CampaignCell& cell = cells[c];
    check_decoder(cell.seq, cell.decoder);
    cell.noise.validate();
    for (std::size_t o = 0; o < cell.offsets.size(); ++o) {
      const long r = cell.offsets[o];
      CampaignRow row;
      row.cell_id = c;
      row.family = cell.family;
      row.offset = r;
      switch (cell.decoder.kind) {
        case DecoderKind::Orthogonal:
          row.v = cell.decoder.tagset->v;
          row.k = cell.decoder.tagset->k;
          row.rho = cell.decoder.tagset->rho_c;
          break;
        case DecoderKind::Naive:
          row.v = 1;
          row.k = 1;
          row.rho = 0;
          break;
        default:
          row.v = cell.decoder.tag.v;
          row.k = cell.decoder.tag.k;
          row.rho = cell.decoder.tag.rho;
      }
      row.p_erasure = cell.noise.mode == NoiseMode::Iid ? cell.noise.p_erasure : 0.0;
      row.p_incursion = cell.noise.mode == NoiseMode::Iid ? cell.noise.p_incursion : 0.0;
      if (cell.noise.mode == NoiseMode::Adversarial) {
        row.e_exact = std::to_string(cell.noise.e_erasures) + ":" + std::to_string(cell.noise.e_incursions);
      }

      double distance_sum = 0.0;
      std::uint64_t distance_count = 0;
      auto tally = [&](const TrialReport& t) {
        ++row.trials;
        row.successes += t.success ? 1 : 0;
        row.false_headers += t.false_headers;
        if (t.result) {
          row.ambiguous += t.result->status == SyncStatus::Ambiguous ? 1 : 0;
          row.nomatch += t.result->status == SyncStatus::NoMatch ? 1 : 0;
          distance_sum += t.result->distance;
          ++distance_count;
        }
      };

      bool exhaustive = false;
      if (cell.noise.mode == NoiseMode::Adversarial && is_window_decoder(cell.decoder.kind)) {
        const Window w = extract_window(cell.seq, r);
        const auto truth = std::span(cell.seq.symbols).subspan(w.start, static_cast<std::size_t>(w.length));
        const std::uint64_t patterns =
            count_error_patterns(truth, cell.noise.e_erasures, cell.noise.e_incursions);
        if (patterns == 0) {
          throw Error(ErrorCode::InvalidArgument, "window cannot hold the requested error counts");
        }
        if (patterns <= kExhaustivePatternLimit) {
          exhaustive = true;
          for_each_error_pattern(truth, cell.noise.e_erasures, cell.noise.e_incursions,
                                 [&](const ErrorPattern& p) { tally(run_sync_trial(cell.seq, p, cell.decoder, r)); });
        }
      }
      if (!exhaustive) {
        for (std::size_t t = 0; t < cell.trials; ++t) {
          NoiseConfig cfg = cell.noise;
          cfg.seed = trial_seed(master_seed, c, o, t);
          tally(run_sync_trial(cell.seq, cfg, cell.decoder, r));
        }
      }
      if (cell.noise.mode == NoiseMode::Iid) {
        row.mode = "iid";
      } else {
        row.mode = exhaustive ? "adversarial_exhaustive" : "adversarial_sampled";
      }
      row.mean_distance = distance_count ? distance_sum / static_cast<double>(distance_count) : 0.0;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string to_csv(const CampaignReport& report) {
  std::ostringstream out;
  out << kCampaignCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.cell_id << ',' << r.family << ',' << r.v << ',' << r.k << ',' << r.rho << ',' << r.mode
        << ',' << format_double(r.p_erasure) << ',' << format_double(r.p_incursion) << ','
        << r.e_exact << ',' << r.offset << ',' << r.trials << ',' << r.successes << ','
        << r.ambiguous << ',' << r.nomatch << ',' << r.false_headers << '\n';
  }
  return out.str();
}

}  // namespace qtag::sim
