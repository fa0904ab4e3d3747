#include "galois/finite_field.hpp"

#include <algorithm>
#include <string>

namespace galois {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

namespace {

// Multiplies the element `state` (base-p digits) by x modulo x^h + low(x),
// where `low` holds the digits of the non-leading part of the modulus.
std::uint32_t times_x(std::uint32_t state, const std::vector<std::uint32_t>& low,
                      std::uint32_t p, std::uint32_t h, std::uint32_t top_weight) {
  std::uint32_t top = state / top_weight;
  std::uint32_t shifted = (state % top_weight) * p;
  if (top == 0) return shifted;
  // x^h = -low(x); add top * (-low) digit by digit.
  std::uint32_t out = 0, w = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    std::uint32_t d = (shifted / w) % p;
    std::uint32_t sub = static_cast<std::uint32_t>(std::uint64_t{top} * low[i] % p);
    d = (d + p - sub) % p;
    out += d * w;
    w *= p;
  }
  return out;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t h) : p_(p), h_(h) {
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (h < 1 || h > kMaxDegree)
    throw FieldError("field degree " + std::to_string(h) + " outside [1, 8]");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q > kMaxOrder) throw FieldError("field order p^h exceeds 2^20");
  }
  q_ = static_cast<std::uint32_t>(q);

  exp_.assign(2 * (q_ - 1) + 1, 0);
  log_.assign(q_, 0);

  if (h == 1) {
    std::uint32_t g = 0;
    for (std::uint32_t cand = 1; cand < p && g == 0; ++cand) {
      std::uint64_t x = cand;
      std::uint32_t order = 1;
      while (x != 1) {
        x = x * cand % p;
        ++order;
      }
      if (order == p - 1) g = cand;
    }
    modulus_ = {1, (p - g) % p};
    std::uint64_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = static_cast<std::uint32_t>(x);
      x = x * g % p;
    }
  } else {
    const std::uint32_t top_weight = q_ / p;
    bool found = false;
    // Iterating the low-part code upwards enumerates monic polynomials in
    // lexicographic order of (c_{h-1}, ..., c_0).
    for (std::uint32_t t = 0; t < q_ && !found; ++t) {
      std::vector<std::uint32_t> low(h);
      for (std::uint32_t i = 0, w = t; i < h; ++i, w /= p) low[i] = w % p;
      if (low[0] == 0) continue;  // divisible by x
      std::uint32_t state = 1;
      std::uint32_t order = 0;
      bool ok = true;
      for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = state;
        state = times_x(state, low, p, h, top_weight);
        ++order;
        if (state == 1 && order < q_ - 1) {
          ok = false;
          break;
        }
      }
      if (ok && state == 1) {
        found = true;
        modulus_.assign(h + 1, 0);
        modulus_[0] = 1;
        for (std::uint32_t i = 0; i < h; ++i) modulus_[h - i] = low[i];
      }
    }
    if (!found) throw FieldError("no primitive polynomial found");
  }
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    log_[exp_[i]] = i;
    exp_[i + q_ - 1] = exp_[i];
  }

  neg_.resize(q_);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t out = 0, w = 1;
    for (std::uint32_t i = 0; i < h_; ++i, w *= p_) {
      std::uint32_t d = (a / w) % p_;
      out += ((p_ - d) % p_) * w;
    }
    neg_[a] = out;
  }
  if (h_ > 1 && p_ != 2 && q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add_table_[a * q_ + b] = add_digits(a, b);
  }
}

std::uint32_t Field::add_digits(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, w = 1;
  for (std::uint32_t i = 0; i < h_; ++i, w *= p_) {
    std::uint32_t d = (a / w) % p_ + (b / w) % p_;
    if (d >= p_) d -= p_;
    out += d * w;
  }
  return out;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero field element");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::uint32_t>((std::uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1))];
}

std::uint32_t Field::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> Field::digits(std::uint32_t a) const {
  std::vector<std::uint32_t> d(h_);
  for (std::uint32_t i = 0; i < h_; ++i, a /= p_) d[i] = a % p_;
  return d;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t h) { return std::make_shared<const Field>(p, h); }

FieldPtr make_field_of_order(std::uint32_t q) {
  if (!is_prime_power(q)) throw FieldError(std::to_string(q) + " is not a prime power");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t h = 0;
  for (std::uint32_t r = q; r > 1; r /= p) ++h;
  return make_field(p, h);
}

FieldElement::FieldElement(FieldPtr field, std::uint32_t code) : field_(std::move(field)), code_(code) {
  if (!field_) throw FieldError("null field");
  if (code_ >= field_->q()) throw FieldError("element code out of range");
}

bool FieldElement::same_field(const FieldElement& o) const {
  return field_ == o.field_ || *field_ == *o.field_;
}

const Field& FieldElement::checked(const FieldElement& o) const {
  if (!same_field(o)) throw FieldError("arithmetic between elements of different fields");
  return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return {field_, checked(o).add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  return {field_, checked(o).sub(code_, o.code_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  return {field_, checked(o).mul(code_, o.code_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(code_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(code_)}; }

namespace poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  Poly mm = m;
  trim(mm);
  trim(a);
  if (mm.empty()) throw std::domain_error("polynomial modulus is zero");
  std::uint64_t lead_inv = 1;
  for (std::uint32_t i = 0; i < p - 2; ++i) lead_inv = lead_inv * mm.back() % p;
  while (a.size() >= mm.size()) {
    std::uint64_t f = a.back() * lead_inv % p;
    std::size_t shift = a.size() - mm.size();
    for (std::size_t i = 0; i < mm.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - f * mm[i] % p) % p);
    trim(a);
  }
  return a;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  trim(r);
  return r;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  Poly g = f;
  trim(g);
  const std::size_t deg = g.size() - 1;
  if (deg < 1) return false;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly cand(d + 1, 0);
      cand[d] = 1;
      std::uint64_t w = t;
      for (std::size_t i = 0; i < d; ++i, w /= p) cand[i] = static_cast<std::uint32_t>(w % p);
      if (mod(g, cand, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

}  // namespace galois
