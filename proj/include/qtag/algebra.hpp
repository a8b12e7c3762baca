#pragma once

// Number theory and finite fields GF(p^e) used by the explicit tag
// constructions. Everything here is desk scale: field orders are capped at
// kMaxFieldOrder and arithmetic is table driven.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace qtag::algebra {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_prime(std::uint64_t n) noexcept;
std::optional<PrimePower> is_prime_power(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept;
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

/// Least g >= 2 with multiplicative order p-1 modulo the odd prime p.
std::uint64_t smallest_primitive_root(std::uint64_t p);

/// {x^e mod p : 1 <= x < p}, optionally with 0 adjoined. e must be one of
/// 2, 4, 8 and divide p-1.
std::set<std::uint64_t> power_residue_set(std::uint64_t p, unsigned e, bool include_zero);

/// Field elements are encoded as integers in [0, p^e): the coefficient of x^i
/// is the i-th base-p digit.
using Element = std::uint32_t;

struct FieldDescriptor {
  std::uint64_t p = 0;
  unsigned e = 0;
  /// Monic modulus, low degree first; size e+1 with modulus.back() == 1.
  std::vector<std::uint32_t> modulus;
  Element generator = 0;

  std::uint64_t order() const;
};

/// GF(p^e) with log/antilog tables. The modulus is the smallest monic
/// irreducible of degree e (ordered by the integer encoding of its lower
/// coefficients) and the generator is the smallest primitive element.
class Field {
 public:
  Field(std::uint64_t p, unsigned e);

  const FieldDescriptor& descriptor() const noexcept { return desc_; }
  std::uint64_t order() const noexcept { return order_; }
  std::uint64_t characteristic() const noexcept { return desc_.p; }
  unsigned degree() const noexcept { return desc_.e; }

  bool contains(std::uint64_t a) const noexcept { return a < order_; }
  Element add(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element pow(Element a, std::uint64_t n) const;
  /// generator^i for any i >= 0.
  Element generator_power(std::uint64_t i) const;
  /// Discrete log to the generator base; a must be nonzero.
  std::uint64_t log(Element a) const;

  /// Elements with only a constant coefficient form the prime subfield.
  bool in_prime_subfield(Element a) const noexcept { return a < desc_.p; }

  /// Relative trace onto the subfield of order p^sub_degree:
  /// sum_{i < e/sub_degree} beta^(p^(sub_degree*i)).
  Element trace(Element beta, unsigned sub_degree) const;

 private:
  void check(Element a) const;

  FieldDescriptor desc_;
  std::uint64_t order_ = 0;
  std::vector<Element> exp_;      // exp_[i] = g^i, i in [0, order-1)
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
};

FieldDescriptor build_field(std::uint64_t p, unsigned e);

/// Absolute trace onto the prime subfield.
Element trace_to_prime_subfield(const Field& field, std::uint64_t beta);

/// True iff the monic polynomial (low degree first) is irreducible over GF(p),
/// by trial division against every monic polynomial of degree <= deg/2.
bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint64_t p);

}  // namespace qtag::algebra
