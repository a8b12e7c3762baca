#pragma once

// Tag vectors, supports, cyclic shifts and the correlation machinery that
// defines comma-free indices of single tags and of block codes.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtag {

/// Sorted, duplicate-free subset of Z_v.
using Support = std::vector<int>;

/// Binary vector of length v indexed by Z_v.
class TagVector {
 public:
  TagVector() = default;
  explicit TagVector(int v);
  explicit TagVector(std::vector<std::uint8_t> bits);

  static TagVector from_support(const Support& support, int v);
  /// Parses a string of '0'/'1' characters.
  static TagVector from_string(std::string_view bits);

  int length() const noexcept { return static_cast<int>(bits_.size()); }
  int weight() const noexcept;
  Support support() const;
  std::string to_string() const;

  std::uint8_t operator[](int i) const { return bits_[static_cast<std::size_t>(i)]; }
  void set(int i, bool value) { bits_[static_cast<std::size_t>(i)] = value ? 1 : 0; }
  void flip(int i) { bits_[static_cast<std::size_t>(i)] ^= 1; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const TagVector&, const TagVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Validates and sorts a support: entries in [0, v), no duplicates.
Support make_support(std::vector<int> elements, int v);

struct QuantumTag {
  int v = 0;
  Support support;
  int k = 0;
  /// 2(k - max off-peak autocorrelation); <= 0 means not self-synchronizing.
  int rho = 0;
  bool optimal = false;

  static QuantumTag from_support(std::vector<int> elements, int v);
  TagVector vector() const { return TagVector::from_support(support, v); }
};

/// pi^t: result bit i equals x bit (i - t mod v). Negative t shifts left.
TagVector cyclic_shift(const TagVector& x, long t);

/// S + i = {s + i mod v}, returned sorted.
Support translate(const Support& s, long i, int v);

/// Hamming distance between equal-length vectors.
int hamming_distance(const TagVector& x, const TagVector& y);

/// sum_i x_i y_{i+t mod v}.
int periodic_correlation(const TagVector& x, const TagVector& y, long t);

/// sum_i x_i y_{i+t} with out-of-range indices contributing nothing.
int aperiodic_correlation(const TagVector& x, const TagVector& y, long t);

/// R_x(t) for t = 0..v-1.
std::vector<int> autocorrelation_profile(const TagVector& x);

int tag_comma_free_index(const Support& support, int v);

/// floor(2k(v-k)/(v-1)).
int comma_free_upper_bound(int v, int k);

bool is_optimal_tag(const QuantumTag& tag);

/// Last `overlap` bits of c followed by the first v-overlap bits of next.
TagVector splice(const TagVector& c, const TagVector& next, int overlap);

struct CodeMetrics {
  int rho_c = 0;
  /// Minimum pairwise distance; v+1 when the code has a single codeword.
  int d = 0;
};

/// Exhaustive comma-free index (every ordered pair, every overlap, every
/// reference codeword) and minimum distance of a block code.
CodeMetrics code_metrics(std::span<const TagVector> codewords);

/// Orthogonal self-synchronizing tags: equal-weight supports used as an
/// s-ary alphabet. rho_c and d are guarantees, never larger than the exact
/// values code_metrics would report.
struct OrthogonalTagSet {
  int v = 0;
  int k = 0;
  std::vector<QuantumTag> tags;
  int rho_c = 0;
  int d = 0;

  /// Parameters are the exact code metrics.
  static OrthogonalTagSet from_supports(const std::vector<Support>& supports, int v);
  /// Parameters are caller-declared guarantees (for example the values an
  /// optical orthogonal code is certified to meet); they are checked against
  /// the exact metrics.
  static OrthogonalTagSet with_guarantees(const std::vector<Support>& supports, int v, int rho_c,
                                          int d);

  std::vector<TagVector> vectors() const;
  int size() const noexcept { return static_cast<int>(tags.size()); }
};

}  // namespace qtag
