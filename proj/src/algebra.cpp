#include "qtag/algebra.hpp"

#include <algorithm>
#include <string>

#include "qtag/error.hpp"

namespace qtag::algebra {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = lead * m[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return r;
}

Poly digits(std::uint64_t value, std::uint64_t p, unsigned len) {
  Poly d(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return d;
}

std::uint64_t encode(const Poly& a, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> is_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    // p is the least divisor, hence prime.
    if (n != 1) return std::nullopt;
    return PrimePower{p, e};
  }
  return PrimePower{n, 1};
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorCode::InvalidArgument, "zero has no multiplicative order");
  std::uint64_t order = p - 1;
  for (std::uint64_t r : distinct_prime_factors(p - 1)) {
    while (order % r == 0 && pow_mod(a, order / r, p) == 1) order /= r;
  }
  return order;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  for (std::uint64_t g = 2; g < p; ++g) {
    if (multiplicative_order(g, p) == p - 1) return g;
  }
  throw Error(ErrorCode::NoQualifyingRoot, "no primitive root found");
}

std::set<std::uint64_t> power_residue_set(std::uint64_t p, unsigned e, bool include_zero) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (e != 2 && e != 4 && e != 8) {
    throw Error(ErrorCode::InvalidArgument, "residue exponent must be 2, 4 or 8");
  }
  if ((p - 1) % e != 0) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(e) + " does not divide " + std::to_string(p) + "-1");
  }
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 1; x < p; ++x) out.insert(pow_mod(x, e, p));
  if (include_zero) out.insert(0);
  return out;
}

bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint64_t p) {
  const std::size_t deg = monic.size() - 1;
  if (deg <= 1) return deg == 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<unsigned>(d));
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly divisor = digits(lower, p, static_cast<unsigned>(d));
      divisor.push_back(1);
      if (poly_mod(monic, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::uint64_t FieldDescriptor::order() const { return ipow(p, e); }

Field::Field(std::uint64_t p, unsigned e) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t order = 1;
  for (unsigned i = 0; i < e; ++i) {
    order *= p;
    if (order > kMaxFieldOrder) {
      throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^20");
    }
  }
  desc_.p = p;
  desc_.e = e;
  order_ = order;

  for (std::uint64_t lower = 0; lower < order; ++lower) {
    Poly candidate = digits(lower, p, e);
    candidate.push_back(1);
    if (is_irreducible(candidate, p)) {
      desc_.modulus = std::move(candidate);
      break;
    }
  }

  auto slow_mul = [&](std::uint64_t a, std::uint64_t b) {
    return encode(poly_mod(poly_mul(digits(a, p, e), digits(b, p, e), p), desc_.modulus, p), p);
  };
  auto slow_pow = [&](std::uint64_t a, std::uint64_t n) {
    std::uint64_t r = 1;
    while (n > 0) {
      if (n & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      n >>= 1;
    }
    return r;
  };

  const std::uint64_t group = order - 1;
  const auto factors = distinct_prime_factors(group);
  for (std::uint64_t g = 1; g < order; ++g) {
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (slow_pow(g, group / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      desc_.generator = static_cast<Element>(g);
      break;
    }
  }

  exp_.resize(group);
  log_.assign(order, 0);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < group; ++i) {
    exp_[i] = static_cast<Element>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = slow_mul(x, desc_.generator);
  }
}

void Field::check(Element a) const {
  if (!contains(a)) {
    throw Error(ErrorCode::InvalidArgument,
                "element " + std::to_string(a) + " outside field of order " + std::to_string(order_));
  }
}

Element Field::add(Element a, Element b) const {
  check(a);
  check(b);
  const std::uint64_t p = desc_.p;
  std::uint64_t result = 0;
  std::uint64_t place = 1;
  for (unsigned i = 0; i < desc_.e; ++i) {
    result += ((a % p + b % p) % p) * place;
    a = static_cast<Element>(a / p);
    b = static_cast<Element>(b / p);
    place *= p;
  }
  return static_cast<Element>(result);
}

Element Field::mul(Element a, Element b) const {
  check(a);
  check(b);
  if (a == 0 || b == 0) return 0;
  const std::uint64_t group = order_ - 1;
  return exp_[(std::uint64_t{log_[a]} + log_[b]) % group];
}

Element Field::pow(Element a, std::uint64_t n) const {
  check(a);
  if (n == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t group = order_ - 1;
  const unsigned __int128 e = static_cast<unsigned __int128>(log_[a]) * n;
  return exp_[static_cast<std::uint64_t>(e % group)];
}

Element Field::generator_power(std::uint64_t i) const { return exp_[i % (order_ - 1)]; }

std::uint64_t Field::log(Element a) const {
  check(a);
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "log of zero");
  return log_[a];
}

Element Field::trace(Element beta, unsigned sub_degree) const {
  check(beta);
  if (sub_degree == 0 || desc_.e % sub_degree != 0) {
    throw Error(ErrorCode::InvalidArgument, "subfield degree must divide the extension degree");
  }
  const std::uint64_t q = ipow(desc_.p, sub_degree);
  Element sum = 0;
  Element term = beta;
  for (unsigned i = 0; i < desc_.e / sub_degree; ++i) {
    sum = add(sum, term);
    term = pow(term, q);
  }
  return sum;
}

FieldDescriptor build_field(std::uint64_t p, unsigned e) { return Field(p, e).descriptor(); }

Element trace_to_prime_subfield(const Field& field, std::uint64_t beta) {
  if (!field.contains(beta)) {
    throw Error(ErrorCode::InvalidArgument, "element outside field");
  }
  return field.trace(static_cast<Element>(beta), 1);
}

}  // namespace qtag::algebra
