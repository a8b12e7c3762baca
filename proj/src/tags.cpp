#include "qtag/tags.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qtag/error.hpp"

namespace qtag {

namespace {

int mod(long a, int v) {
  const long r = a % v;
  return static_cast<int>(r < 0 ? r + v : r);
}

void require_same_length(const TagVector& x, const TagVector& y) {
  if (x.length() != y.length()) {
    throw Error(ErrorCode::LengthMismatch, "vectors of length " + std::to_string(x.length()) +
                                               " and " + std::to_string(y.length()));
  }
}

}  // namespace

TagVector::TagVector(int v) {
  if (v < 1) throw Error(ErrorCode::InvalidArgument, "tag length must be positive");
  bits_.assign(static_cast<std::size_t>(v), 0);
}

TagVector::TagVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw Error(ErrorCode::InvalidArgument, "tag length must be positive");
  for (auto& b : bits_) b = b ? 1 : 0;
}

TagVector TagVector::from_support(const Support& support, int v) {
  TagVector x(v);
  for (int s : support) {
    if (s < 0 || s >= v) {
      throw Error(ErrorCode::InvalidArgument,
                  "support element " + std::to_string(s) + " outside Z_" + std::to_string(v));
    }
    x.set(s, true);
  }
  return x;
}

TagVector TagVector::from_string(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::InvalidArgument, "bit string may only contain 0 and 1");
    }
    out.push_back(c == '1' ? 1 : 0);
  }
  return TagVector(std::move(out));
}

int TagVector::weight() const noexcept {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Support TagVector::support() const {
  Support s;
  for (int i = 0; i < length(); ++i) {
    if ((*this)[i]) s.push_back(i);
  }
  return s;
}

std::string TagVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

Support make_support(std::vector<int> elements, int v) {
  if (v < 1) throw Error(ErrorCode::InvalidArgument, "tag length must be positive");
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 0 || elements[i] >= v) {
      throw Error(ErrorCode::InvalidArgument, "support element " + std::to_string(elements[i]) +
                                                  " outside Z_" + std::to_string(v));
    }
    if (i > 0 && elements[i] == elements[i - 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate support element " + std::to_string(elements[i]));
    }
  }
  return elements;
}

QuantumTag QuantumTag::from_support(std::vector<int> elements, int v) {
  QuantumTag tag;
  tag.v = v;
  tag.support = make_support(std::move(elements), v);
  tag.k = static_cast<int>(tag.support.size());
  tag.rho = tag_comma_free_index(tag.support, v);
  tag.optimal = is_optimal_tag(tag);
  return tag;
}

TagVector cyclic_shift(const TagVector& x, long t) {
  const int v = x.length();
  TagVector out(v);
  for (int i = 0; i < v; ++i) out.set(i, x[mod(i - t, v)]);
  return out;
}

Support translate(const Support& s, long i, int v) {
  Support out;
  out.reserve(s.size());
  for (int e : s) out.push_back(mod(e + i, v));
  std::sort(out.begin(), out.end());
  return out;
}

int hamming_distance(const TagVector& x, const TagVector& y) {
  require_same_length(x, y);
  int d = 0;
  for (int i = 0; i < x.length(); ++i) d += x[i] != y[i];
  return d;
}

int periodic_correlation(const TagVector& x, const TagVector& y, long t) {
  require_same_length(x, y);
  const int v = x.length();
  const int shift = mod(t, v);
  int sum = 0;
  for (int i = 0; i < v; ++i) sum += x[i] & y[(i + shift) % v];
  return sum;
}

int aperiodic_correlation(const TagVector& x, const TagVector& y, long t) {
  require_same_length(x, y);
  const long v = x.length();
  if (t <= -v || t >= v) return 0;
  int sum = 0;
  for (long i = std::max(0L, -t); i < std::min(v, v - t); ++i) {
    sum += x[static_cast<int>(i)] & y[static_cast<int>(i + t)];
  }
  return sum;
}

std::vector<int> autocorrelation_profile(const TagVector& x) {
  std::vector<int> r(static_cast<std::size_t>(x.length()));
  for (int t = 0; t < x.length(); ++t) r[static_cast<std::size_t>(t)] = periodic_correlation(x, x, t);
  return r;
}

int tag_comma_free_index(const Support& support, int v) {
  if (support.empty()) throw Error(ErrorCode::EmptySupport, "tag support is empty");
  const TagVector x = TagVector::from_support(support, v);
  const int k = static_cast<int>(support.size());
  int max_off_peak = 0;
  for (int t = 1; t < v; ++t) max_off_peak = std::max(max_off_peak, periodic_correlation(x, x, t));
  return 2 * (k - max_off_peak);
}

int comma_free_upper_bound(int v, int k) {
  if (v < 2 || k < 1 || k > v) {
    throw Error(ErrorCode::InvalidArgument, "bound needs v >= 2 and 1 <= k <= v");
  }
  return static_cast<int>(2L * k * (v - k) / (v - 1));
}

bool is_optimal_tag(const QuantumTag& tag) {
  if (tag.v < 2 || tag.k < 1 || tag.rho < 1) return false;
  return tag.rho == comma_free_upper_bound(tag.v, tag.k);
}

TagVector splice(const TagVector& c, const TagVector& next, int overlap) {
  require_same_length(c, next);
  const int v = c.length();
  if (overlap < 1 || overlap > v - 1) {
    throw Error(ErrorCode::InvalidArgument, "splice overlap must lie in [1, v-1]");
  }
  TagVector out(v);
  for (int j = 0; j < overlap; ++j) out.set(j, c[v - overlap + j]);
  for (int j = overlap; j < v; ++j) out.set(j, next[j - overlap]);
  return out;
}

CodeMetrics code_metrics(std::span<const TagVector> codewords) {
  if (codewords.empty()) throw Error(ErrorCode::InvalidArgument, "code has no codewords");
  const int v = codewords.front().length();
  for (const auto& c : codewords) require_same_length(codewords.front(), c);

  CodeMetrics m;
  m.d = v + 1;
  for (std::size_t a = 0; a < codewords.size(); ++a) {
    for (std::size_t b = a + 1; b < codewords.size(); ++b) {
      const int dist = hamming_distance(codewords[a], codewords[b]);
      if (dist == 0) throw Error(ErrorCode::DuplicateCodeword, "codewords must be distinct");
      m.d = std::min(m.d, dist);
    }
  }

  m.rho_c = v;
  for (const auto& c : codewords) {
    for (const auto& next : codewords) {
      for (int overlap = 1; overlap < v; ++overlap) {
        const TagVector s = splice(c, next, overlap);
        for (const auto& ref : codewords) m.rho_c = std::min(m.rho_c, hamming_distance(ref, s));
      }
    }
  }
  if (v == 1) m.rho_c = 0;
  return m;
}

namespace {

OrthogonalTagSet build_set(const std::vector<Support>& supports, int v) {
  if (supports.empty()) throw Error(ErrorCode::InvalidArgument, "tag set is empty");
  OrthogonalTagSet set;
  set.v = v;
  for (const auto& s : supports) set.tags.push_back(QuantumTag::from_support(s, v));
  set.k = set.tags.front().k;
  for (const auto& t : set.tags) {
    if (t.k != set.k) throw Error(ErrorCode::InvalidArgument, "tags must share one weight");
  }
  return set;
}

}  // namespace

OrthogonalTagSet OrthogonalTagSet::from_supports(const std::vector<Support>& supports, int v) {
  OrthogonalTagSet set = build_set(supports, v);
  const auto vecs = set.vectors();
  const CodeMetrics m = code_metrics(vecs);
  if (m.rho_c <= 0 || m.d <= 0) {
    throw Error(ErrorCode::NotSelfSynchronizing,
                "tag set has comma-free index " + std::to_string(m.rho_c));
  }
  set.rho_c = m.rho_c;
  set.d = m.d;
  return set;
}

OrthogonalTagSet OrthogonalTagSet::with_guarantees(const std::vector<Support>& supports, int v,
                                                   int rho_c, int d) {
  OrthogonalTagSet set = build_set(supports, v);
  const auto vecs = set.vectors();
  const CodeMetrics m = code_metrics(vecs);
  if (rho_c < 1 || d < 1) {
    throw Error(ErrorCode::InvalidArgument, "declared rho_c and d must be positive");
  }
  if (rho_c > m.rho_c || d > m.d) {
    throw Error(ErrorCode::VerificationMismatch,
                "declared (rho_c, d) = (" + std::to_string(rho_c) + ", " + std::to_string(d) +
                    ") exceeds exact (" + std::to_string(m.rho_c) + ", " + std::to_string(m.d) +
                    ")");
  }
  set.rho_c = rho_c;
  set.d = d;
  return set;
}

std::vector<TagVector> OrthogonalTagSet::vectors() const {
  std::vector<TagVector> out;
  out.reserve(tags.size());
  for (const auto& t : tags) out.push_back(t.vector());
  return out;
}

}  // namespace qtag
