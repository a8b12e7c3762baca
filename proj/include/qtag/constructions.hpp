#pragma once

// Explicit optimal tags from cyclic difference sets, plus the verifiers for
// difference sets and optical orthogonal codes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtag/tags.hpp"

namespace qtag {

enum class DsFamily { Singer, Residue, Hall, TwinPrime, Complement, External };

std::string_view to_string(DsFamily family) noexcept;
std::optional<DsFamily> parse_ds_family(std::string_view name) noexcept;

struct DifferenceSetCertificate {
  int v = 0;
  int k = 0;
  int mu = 0;
  bool verified = false;
  DsFamily family = DsFamily::External;
};

struct DifferenceSetTag {
  QuantumTag tag;
  DifferenceSetCertificate certificate;

  /// Dissimilarity a header built from this set guarantees: k - mu.
  int header_delta() const noexcept { return certificate.k - certificate.mu; }
};

/// mu if every nonzero residue occurs exactly mu times as a difference of
/// two distinct elements, with k > mu > 0.
std::optional<int> verify_difference_set(const Support& s, int v);

/// Trace-zero exponents of a generator of GF(q^{m+1}), reduced modulo
/// (q^{m+1}-1)/(q-1).
DifferenceSetTag singer_difference_set(std::uint64_t q, unsigned m);

enum class ResidueFamily { Quadratic, Quartic, QuarticZero, Octic, OcticZero };

std::string_view to_string(ResidueFamily family) noexcept;
std::optional<ResidueFamily> parse_residue_family(std::string_view name) noexcept;

/// Power-residue difference sets. Throws NonPrime or InadmissiblePrime when
/// p does not meet the family's form (p = 4t^2+1 with t odd, and so on).
DifferenceSetTag residue_ds(std::uint64_t p, ResidueFamily family);

/// Hall sextic-residue difference set for p = 4t^2 + 27, p = 1 mod 6. The
/// primitive root is the least one whose discrete log of 3 is 1 mod 6.
DifferenceSetTag hall_ds(std::uint64_t p);

/// Twin-prime difference set in Z_{p(p+2)}, with (x, y) mapped to the i that
/// is x mod p and y mod p+2.
DifferenceSetTag twin_prime_ds(std::uint64_t p);

DifferenceSetTag complement_ds(const Support& s, int v);

/// floor(floor((v-1)/(k-1)) / k): the largest possible (v,k,1)-OOC.
int johnson_bound(int v, int k);

/// Off-peak autocorrelations at most lambda_a and cross-correlations (every
/// shift, including 0) at most lambda_c.
bool verify_ooc(const std::vector<Support>& codewords, int v, int lambda_a, int lambda_c);

/// Tag set carrying the guarantees an index-one OOC is certified to meet:
/// comma-free index k-2 and distance 2k-2 (distance v+1 for one codeword).
OrthogonalTagSet ooc_tag_set(const std::vector<Support>& codewords, int v);

}  // namespace qtag
