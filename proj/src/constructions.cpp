#include "qtag/constructions.hpp"

#include <algorithm>
#include <set>

#include "qtag/algebra.hpp"
#include "qtag/error.hpp"

namespace qtag {

namespace {

using algebra::is_prime;
using algebra::pow_mod;

// Finishes a construction: certifies the set and checks it against the
// parameters the construction promises.
DifferenceSetTag certify(std::vector<int> elements, int v, DsFamily family, int expect_k,
                         int expect_mu, int expect_rho) {
  DifferenceSetTag out;
  out.tag = QuantumTag::from_support(std::move(elements), v);
  const auto mu = verify_difference_set(out.tag.support, v);
  if (!mu) {
    throw Error(ErrorCode::NotADifferenceSet,
                std::string(to_string(family)) + " construction did not yield a difference set");
  }
  if (out.tag.k != expect_k || *mu != expect_mu || out.tag.rho != expect_rho ||
      out.tag.rho != 2 * (out.tag.k - *mu)) {
    throw Error(ErrorCode::VerificationMismatch,
                std::string(to_string(family)) + " construction parameters disagree: got (" +
                    std::to_string(v) + "," + std::to_string(out.tag.k) + "," +
                    std::to_string(*mu) + ") rho " + std::to_string(out.tag.rho));
  }
  out.certificate = {v, out.tag.k, *mu, true, family};
  return out;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
}

enum class Parity { Odd, Even, Any };

// Some t >= 0 of the requested parity with a*t^2 + b == n.
bool has_square_form(std::uint64_t n, std::uint64_t a, std::uint64_t b, Parity parity) {
  const std::uint64_t start = parity == Parity::Odd ? 1 : 0;
  const std::uint64_t step = parity == Parity::Any ? 1 : 2;
  for (std::uint64_t t = start; a * t * t + b <= n; t += step) {
    if (a * t * t + b == n) return true;
  }
  return false;
}

bool is_square_mod(std::uint64_t x, std::uint64_t p) { return pow_mod(x, (p - 1) / 2, p) == 1; }

int checked_int(std::uint64_t value, const char* what) {
  if (value > 1'000'000'000) throw Error(ErrorCode::CapExceeded, std::string(what) + " too large");
  return static_cast<int>(value);
}

}  // namespace

std::string_view to_string(DsFamily family) noexcept {
  switch (family) {
    case DsFamily::Singer: return "singer";
    case DsFamily::Residue: return "residue";
    case DsFamily::Hall: return "hall";
    case DsFamily::TwinPrime: return "twin_prime";
    case DsFamily::Complement: return "complement";
    case DsFamily::External: return "external";
  }
  return "external";
}

std::optional<DsFamily> parse_ds_family(std::string_view name) noexcept {
  for (auto f : {DsFamily::Singer, DsFamily::Residue, DsFamily::Hall, DsFamily::TwinPrime,
                 DsFamily::Complement, DsFamily::External}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view to_string(ResidueFamily family) noexcept {
  switch (family) {
    case ResidueFamily::Quadratic: return "quadratic";
    case ResidueFamily::Quartic: return "quartic";
    case ResidueFamily::QuarticZero: return "quartic_zero";
    case ResidueFamily::Octic: return "octic";
    case ResidueFamily::OcticZero: return "octic_zero";
  }
  return "quadratic";
}

std::optional<ResidueFamily> parse_residue_family(std::string_view name) noexcept {
  for (auto f : {ResidueFamily::Quadratic, ResidueFamily::Quartic, ResidueFamily::QuarticZero,
                 ResidueFamily::Octic, ResidueFamily::OcticZero}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::optional<int> verify_difference_set(const Support& s, int v) {
  const int k = static_cast<int>(s.size());
  if (k < 2 || k > v - 1) return std::nullopt;
  std::vector<int> count(static_cast<std::size_t>(v), 0);
  for (int a : s) {
    for (int b : s) {
      if (a == b) continue;
      ++count[static_cast<std::size_t>(((a - b) % v + v) % v)];
    }
  }
  const int mu = count[1 % v];
  for (int r = 1; r < v; ++r) {
    if (count[static_cast<std::size_t>(r)] != mu) return std::nullopt;
  }
  if (mu <= 0 || mu >= k) return std::nullopt;
  return mu;
}

DifferenceSetTag singer_difference_set(std::uint64_t q, unsigned m) {
  const auto pp = algebra::is_prime_power(q);
  if (!pp) throw Error(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "Singer construction needs m >= 2");

  const algebra::Field field(pp->p, pp->e * (m + 1));
  const std::uint64_t order = field.order();
  const std::uint64_t v = (order - 1) / (q - 1);
  std::vector<int> support;
  for (std::uint64_t i = 0; i < v; ++i) {
    if (field.trace(field.generator_power(i), pp->e) == 0) support.push_back(static_cast<int>(i));
  }

  std::uint64_t qm = 1;
  for (unsigned i = 0; i < m; ++i) qm *= q;
  const int k = checked_int((qm - 1) / (q - 1), "k");
  const int mu = checked_int((qm / q - 1) / (q - 1), "mu");
  const int rho = checked_int(2 * (qm - qm / q) / (q - 1), "rho");
  return certify(std::move(support), checked_int(v, "v"), DsFamily::Singer, k, mu, rho);
}

DifferenceSetTag residue_ds(std::uint64_t p, ResidueFamily family) {
  require_prime(p);
  const int v = checked_int(p, "p");
  bool admissible = false;
  unsigned e = 2;
  bool zero = false;
  std::uint64_t k = 0;
  std::uint64_t rho = 0;
  switch (family) {
    case ResidueFamily::Quadratic:
      admissible = p % 4 == 3;
      k = (p - 1) / 2;
      rho = (p + 1) / 2;
      break;
    case ResidueFamily::Quartic:
      admissible = has_square_form(p, 4, 1, Parity::Odd);
      e = 4;
      k = (p - 1) / 4;
      rho = (3 * p + 1) / 8;
      break;
    case ResidueFamily::QuarticZero:
      admissible = has_square_form(p, 4, 9, Parity::Odd);
      e = 4;
      zero = true;
      k = (p + 3) / 4;
      rho = (3 * p + 9) / 8;
      break;
    case ResidueFamily::Octic:
      admissible = has_square_form(p, 8, 1, Parity::Odd) && has_square_form(p, 64, 9, Parity::Odd);
      e = 8;
      k = (p - 1) / 8;
      rho = (7 * p + 1) / 32;
      break;
    case ResidueFamily::OcticZero:
      admissible = has_square_form(p, 8, 49, Parity::Odd) &&
                   has_square_form(p, 64, 441, Parity::Even);
      e = 8;
      zero = true;
      k = (p + 7) / 8;
      rho = (7 * p + 49) / 32;
      break;
  }
  if (!admissible) {
    throw Error(ErrorCode::InadmissiblePrime, std::to_string(p) + " is not admissible for the " +
                                                  std::string(to_string(family)) + " family");
  }
  if (k < 2) {
    throw Error(ErrorCode::InadmissiblePrime,
                std::to_string(p) + " gives a degenerate set of weight " + std::to_string(k));
  }
  const auto residues = algebra::power_residue_set(p, e, zero);
  std::vector<int> support(residues.begin(), residues.end());
  const int ki = static_cast<int>(k);
  const int rhoi = static_cast<int>(rho);
  // rho = 2(k - mu) fixes mu.
  return certify(std::move(support), v, DsFamily::Residue, ki, ki - rhoi / 2, rhoi);
}

DifferenceSetTag hall_ds(std::uint64_t p) {
  require_prime(p);
  if (p % 6 != 1 || !has_square_form(p, 4, 27, Parity::Any)) {
    throw Error(ErrorCode::InadmissiblePrime,
                std::to_string(p) + " is not a prime 1 mod 6 of the form 4t^2 + 27");
  }
  for (std::uint64_t alpha = 2; alpha < p; ++alpha) {
    if (algebra::multiplicative_order(alpha, p) != p - 1) continue;
    std::uint64_t x = 0;
    std::uint64_t power = 1;
    while (power != 3) {
      power = power * alpha % p;
      ++x;
    }
    if (x % 6 != 1) continue;

    std::vector<int> support;
    power = 1;
    for (std::uint64_t i = 0; i < p - 1; ++i) {
      const auto r = i % 6;
      if (r == 0 || r == 1 || r == 3) support.push_back(static_cast<int>(power));
      power = power * alpha % p;
    }
    const int v = checked_int(p, "p");
    return certify(std::move(support), v, DsFamily::Hall, (v - 1) / 2, (v - 3) / 4, (v + 1) / 2);
  }
  throw Error(ErrorCode::NoQualifyingRoot, "no primitive root of " + std::to_string(p) +
                                               " has log(3) = 1 mod 6");
}

DifferenceSetTag twin_prime_ds(std::uint64_t p) {
  if (!is_prime(p) || !is_prime(p + 2)) {
    throw Error(ErrorCode::NotTwinPrimes,
                std::to_string(p) + " and " + std::to_string(p + 2) + " are not both prime");
  }
  const std::uint64_t p2 = p + 2;
  const int v = checked_int(p * p2, "v");
  std::vector<int> support;
  for (int i = 0; i < v; ++i) {
    const std::uint64_t x = static_cast<std::uint64_t>(i) % p;
    const std::uint64_t y = static_cast<std::uint64_t>(i) % p2;
    if (y == 0 || (x != 0 && is_square_mod(x, p) == is_square_mod(y, p2))) support.push_back(i);
  }
  return certify(std::move(support), v, DsFamily::TwinPrime, (v - 1) / 2, (v - 3) / 4,
                 (v + 1) / 2);
}

DifferenceSetTag complement_ds(const Support& s, int v) {
  const Support sorted = make_support(s, v);
  const auto mu = verify_difference_set(sorted, v);
  if (!mu) throw Error(ErrorCode::NotADifferenceSet, "input is not a cyclic difference set");
  std::vector<int> rest;
  for (int i = 0; i < v; ++i) {
    if (!std::binary_search(sorted.begin(), sorted.end(), i)) rest.push_back(i);
  }
  const int k = static_cast<int>(sorted.size());
  const int ck = v - k;
  const int cmu = v - 2 * k + *mu;
  return certify(std::move(rest), v, DsFamily::Complement, ck, cmu, 2 * (ck - cmu));
}

int johnson_bound(int v, int k) {
  if (k < 2 || v <= k) throw Error(ErrorCode::InvalidArgument, "Johnson bound needs v > k >= 2");
  return ((v - 1) / (k - 1)) / k;
}

bool verify_ooc(const std::vector<Support>& codewords, int v, int lambda_a, int lambda_c) {
  if (codewords.empty()) return true;
  const std::size_t k = codewords.front().size();
  for (const auto& c : codewords) {
    if (c.size() != k) throw Error(ErrorCode::InvalidArgument, "OOC codewords of mixed weight");
  }
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "OOC weight must be at least 2");
  std::vector<TagVector> vecs;
  for (const auto& c : codewords) vecs.push_back(TagVector::from_support(make_support(c, v), v));
  for (std::size_t a = 0; a < vecs.size(); ++a) {
    for (int t = 1; t < v; ++t) {
      if (periodic_correlation(vecs[a], vecs[a], t) > lambda_a) return false;
    }
    for (std::size_t b = a + 1; b < vecs.size(); ++b) {
      for (int t = 0; t < v; ++t) {
        if (periodic_correlation(vecs[a], vecs[b], t) > lambda_c) return false;
      }
    }
  }
  return true;
}

OrthogonalTagSet ooc_tag_set(const std::vector<Support>& codewords, int v) {
  if (codewords.empty()) throw Error(ErrorCode::InvalidArgument, "OOC is empty");
  if (!verify_ooc(codewords, v, 1, 1)) {
    throw Error(ErrorCode::VerificationMismatch, "codewords do not form a (v,k,1)-OOC");
  }
  const int k = static_cast<int>(codewords.front().size());
  if (k < 3) throw Error(ErrorCode::NotSelfSynchronizing, "OOC weight must be at least 3");
  const int d = codewords.size() == 1 ? v + 1 : 2 * k - 2;
  return OrthogonalTagSet::with_guarantees(codewords, v, k - 2, d);
}

}  // namespace qtag
