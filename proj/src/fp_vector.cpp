#include "galois/fp_vector.hpp"

#include <algorithm>
#include <string>

namespace galois {

FpVector::FpVector(std::uint32_t p, std::size_t length, VectorMeta meta) : p_(p), meta_(meta), entries_(length, 0) {
  if (p < 2 || p > 255) throw std::invalid_argument("FpVector needs 2 <= p < 256");
}

FpVector FpVector::indicator(std::uint32_t p, std::size_t length, std::span<const std::uint32_t> support,
                             VectorMeta meta) {
  FpVector v(p, length, meta);
  for (std::uint32_t i : support) {
    if (i >= length) throw std::out_of_range("index " + std::to_string(i) + " outside a vector of length " +
                                             std::to_string(length));
    v.entries_[i] = 1;
  }
  return v;
}

void FpVector::check_compatible(const FpVector& o) const {
  if (p_ != o.p_ || entries_.size() != o.entries_.size())
    throw std::invalid_argument("vectors differ in field or length");
  if (meta_ != o.meta_) throw std::invalid_argument("vectors live on different coordinate sets");
}

FpVector& FpVector::operator+=(const FpVector& o) { return add_scaled(o, 1); }

FpVector& FpVector::operator-=(const FpVector& o) { return add_scaled(o, p_ - 1); }

FpVector& FpVector::operator*=(std::uint32_t c) {
  c %= p_;
  for (auto& x : entries_) x = static_cast<std::uint8_t>(x * c % p_);
  return *this;
}

FpVector& FpVector::add_scaled(const FpVector& o, std::uint32_t c) {
  check_compatible(o);
  c %= p_;
  if (c == 0) return *this;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] = static_cast<std::uint8_t>((entries_[i] + c * o.entries_[i]) % p_);
  return *this;
}

std::uint32_t FpVector::dot(const FpVector& o) const {
  check_compatible(o);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) s += std::uint32_t{entries_[i]} * o.entries_[i];
  return static_cast<std::uint32_t>(s % p_);
}

std::size_t FpVector::weight() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](std::uint8_t x) { return x != 0; }));
}

std::vector<std::uint32_t> FpVector::support() const {
  std::vector<std::uint32_t> s;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != 0) s.push_back(static_cast<std::uint32_t>(i));
  return s;
}

FpVector operator+(FpVector a, const FpVector& b) { return a += b; }
FpVector operator-(FpVector a, const FpVector& b) { return a -= b; }
FpVector operator*(std::uint32_t c, FpVector a) { return a *= c; }

std::size_t weight(const FpVector& v) { return v.weight(); }
std::size_t distance(const FpVector& a, const FpVector& b) { return (a - b).weight(); }

}  // namespace galois
