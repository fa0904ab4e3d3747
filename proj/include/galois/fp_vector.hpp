#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace galois {

/// Which coordinates a vector lives on: the j-spaces of PG(n,q).
struct VectorMeta {
  int n = -1;
  std::uint32_t q = 0;
  int j = -1;
  bool operator==(const VectorMeta&) const = default;
};

/// A function from an enumerated coordinate set to F_p (p < 256).
class FpVector {
 public:
  FpVector() = default;
  FpVector(std::uint32_t p, std::size_t length, VectorMeta meta = {});

  /// 0/1 vector with the given support; throws std::out_of_range on a bad index.
  static FpVector indicator(std::uint32_t p, std::size_t length, std::span<const std::uint32_t> support,
                            VectorMeta meta = {});

  std::uint32_t p() const { return p_; }
  std::size_t size() const { return entries_.size(); }
  const VectorMeta& meta() const { return meta_; }

  std::uint8_t operator[](std::size_t i) const { return entries_[i]; }
  void set(std::size_t i, std::uint32_t value) { entries_[i] = static_cast<std::uint8_t>(value % p_); }
  std::span<const std::uint8_t> entries() const { return entries_; }
  std::span<std::uint8_t> mutable_entries() { return entries_; }

  FpVector& operator+=(const FpVector& o);
  FpVector& operator-=(const FpVector& o);
  FpVector& operator*=(std::uint32_t c);
  /// this += c * o
  FpVector& add_scaled(const FpVector& o, std::uint32_t c);

  std::uint32_t dot(const FpVector& o) const;
  std::size_t weight() const;
  std::vector<std::uint32_t> support() const;

  bool operator==(const FpVector& o) const = default;

 private:
  void check_compatible(const FpVector& o) const;

  std::uint32_t p_ = 2;
  VectorMeta meta_;
  std::vector<std::uint8_t> entries_;
};

FpVector operator+(FpVector a, const FpVector& b);
FpVector operator-(FpVector a, const FpVector& b);
FpVector operator*(std::uint32_t c, FpVector a);

std::size_t weight(const FpVector& v);
std::size_t distance(const FpVector& a, const FpVector& b);

}  // namespace galois
