#pragma once

// Arithmetic in GF(p^h).
//
// Elements are integer codes in [0, q): the base-p digits of a code are the
// coefficients of a polynomial of degree < h (least significant digit is the
// constant term). The defining polynomial is the lexicographically least
// primitive monic polynomial of degree h, so the class of x generates the
// multiplicative group. For h = 1 the "modulus" is x - g with g the least
// primitive root mod p and arithmetic is plain integer arithmetic mod p.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace galois {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 20;
  static constexpr std::uint32_t kMaxDegree = 8;

  /// Builds GF(p^h). Throws FieldError for non-prime p, h outside [1, 8], or
  /// p^h > 2^20.
  Field(std::uint32_t p, std::uint32_t h);

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t q() const { return q_; }

  /// Monic defining polynomial, most significant coefficient first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  /// Code of the multiplicative generator (x for h > 1, g for h = 1).
  std::uint32_t generator() const { return exp_[1]; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (h_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return add_digits(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (h_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    return exp_[log_[a] + log_[b]];
  }
  /// Multiplicative inverse; throws std::domain_error on zero.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Discrete logarithm base generator(); a must be nonzero.
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(std::uint32_t e) const { return exp_[e % (q_ - 1)]; }

  /// Embeds an integer of the prime field (taken mod p).
  std::uint32_t from_int(std::int64_t v) const;

  /// Base-p digits of a code, constant term first (length h).
  std::vector<std::uint32_t> digits(std::uint32_t a) const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && h_ == o.h_ && modulus_ == o.modulus_;
  }

 private:
  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_;
  std::uint32_t h_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1), exp_[i] = g^i
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> add_table_;  // q*q, only for small extension fields
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(std::uint32_t p, std::uint32_t h);

/// Decomposes a prime power q = p^h; throws FieldError otherwise.
FieldPtr make_field_of_order(std::uint32_t q);

/// True iff q is a prime power.
bool is_prime_power(std::uint64_t q);

/// Value type tying a code to its field; arithmetic between elements of
/// different fields throws FieldError.
class FieldElement {
 public:
  FieldElement(FieldPtr field, std::uint32_t code);

  std::uint32_t code() const { return code_; }
  const FieldPtr& field() const { return field_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement inv() const;

  bool operator==(const FieldElement& o) const {
    return same_field(o) && code_ == o.code_;
  }

 private:
  bool same_field(const FieldElement& o) const;
  const Field& checked(const FieldElement& o) const;

  FieldPtr field_;
  std::uint32_t code_;
};

// Polynomials over F_p with coefficients constant term first. Used to state
// and test the modulus invariants independently of the table arithmetic.
namespace poly {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a);
Poly mod(Poly a, const Poly& m, std::uint32_t p);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
/// Brute force: no monic factor of degree 1..deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p);

}  // namespace poly

}  // namespace galois
