#pragma once

// Incremental reduced row echelon form over F_p.
//
// Rows are kept fully reduced (every pivot column is zero outside its row),
// so a vector's pivot entries never change while it is being reduced. That
// lets reduction read all multipliers up front: for p = 2 it is a run of
// word XORs, for odd p a multiply-accumulate into 32-bit lanes with a single
// reduction mod p at the end.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace galois {

class RowEchelon {
 public:
  RowEchelon(std::uint32_t p, std::size_t length);

  /// Trusts rows as an echelon basis (used when loading a cached basis); the
  /// pivot of each row is its first nonzero entry.
  static RowEchelon from_rows(std::uint32_t p, std::size_t length, const std::vector<std::vector<std::uint8_t>>& rows);

  std::uint32_t p() const { return p_; }
  std::size_t length() const { return length_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Replaces v by its normal form modulo the row space.
  void reduce(std::span<std::uint8_t> v) const;
  bool reduces_to_zero(std::span<const std::uint8_t> v) const;
  /// Adds v to the row space; returns true when the rank grew.
  bool insert(std::span<const std::uint8_t> v);

  /// Inserts count generated vectors. gen(i, out) fills generator i. Batches
  /// are pre-reduced concurrently against the current basis; insertion itself
  /// is serial.
  void insert_generated(std::size_t count, const std::function<void(std::size_t, std::span<std::uint8_t>)>& gen,
                        unsigned threads = 1);

  std::vector<std::uint8_t> row(std::size_t i) const;
  /// v . row_i mod p
  std::uint32_t dot_row(std::size_t i, std::span<const std::uint8_t> v) const;
  /// Basis of the orthogonal complement of the row space.
  std::vector<std::vector<std::uint8_t>> orthogonal_basis() const;

 private:
  void reduce_packed(std::vector<std::uint64_t>& w) const;
  void reduce_bytes(std::span<std::uint8_t> v, std::vector<std::uint32_t>& acc) const;
  void add_row(std::vector<std::uint8_t> v);

  std::uint32_t p_;
  std::size_t length_;
  std::size_t words_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint64_t>> packed_;  // p = 2
  std::vector<std::vector<std::uint8_t>> bytes_;    // odd p
};

}  // namespace galois
