#pragma once

// Subspaces of PG(n,q) in canonical reduced-row-echelon form, their
// enumeration in a fixed total order, and the incidence primitives built on
// top of it. Every vector indexed by k-spaces uses the order produced here.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "galois/finite_field.hpp"

namespace galois {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense matrix over a field, row-major, entries are field codes.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::uint32_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<std::uint32_t> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  void append_row(std::span<const std::uint32_t> v);
};

/// Reduces m in place to reduced row echelon form and drops zero rows.
/// Returns the pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& m);
std::size_t rank(const Field& f, Matrix m);
/// Basis (as rows) of {x : m x = 0}, in reduced row echelon form.
Matrix nullspace(const Field& f, const Matrix& m);

/// A k-space of PG(n,q): (k+1) x (n+1) generator matrix in RREF.
class Subspace {
 public:
  Subspace() = default;
  /// Empty subspace (k = -1) of PG(n,q).
  static Subspace empty(int n);
  /// Row space of arbitrary generator rows.
  static Subspace from_rows(const Field& f, Matrix rows);
  static Subspace from_vectors(const Field& f, int n,
                               std::initializer_list<std::vector<std::uint32_t>> vectors);
  /// Wraps rows already known to be in RREF with full rank.
  static Subspace from_canonical(int n, int k, std::vector<std::uint32_t> entries);

  int n() const { return n_; }
  int dim() const { return k_; }
  std::size_t vector_dim() const { return static_cast<std::size_t>(k_ + 1); }
  bool is_empty() const { return k_ < 0; }

  std::span<const std::uint32_t> row(std::size_t i) const {
    return {entries_.data() + i * static_cast<std::size_t>(n_ + 1), static_cast<std::size_t>(n_ + 1)};
  }
  const std::vector<std::uint32_t>& entries() const { return entries_; }
  Matrix matrix() const;

  std::strong_ordering operator<=>(const Subspace& o) const;
  bool operator==(const Subspace& o) const = default;

 private:
  int n_ = 0;
  int k_ = -1;
  std::vector<std::uint32_t> entries_;
};

Subspace span(const Field& f, std::span<const Subspace> parts);
Subspace span(const Field& f, const Subspace& a, const Subspace& b);
Subspace meet(const Field& f, const Subspace& a, const Subspace& b);
/// Non-empty intersection.
bool incident(const Field& f, const Subspace& a, const Subspace& b);
/// small is a subspace of big.
bool contains(const Field& f, const Subspace& big, const Subspace& small);
bool contains_vector(const Field& f, const Subspace& s, std::span<const std::uint32_t> v);

/// Number of k-spaces of PG(n,q); throws std::overflow_error beyond 64 bits.
std::uint64_t gaussian_count(int n, int k, std::uint64_t q);

/// All k-spaces of PG(n,q), sorted lexicographically by flattened RREF codes.
class SubspaceList {
 public:
  static constexpr std::uint64_t kBudget = 10'000'000;

  SubspaceList(const Field& f, int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return count_; }
  Subspace at(std::size_t i) const;
  std::span<const std::uint32_t> entries_of(std::size_t i) const {
    return {entries_.data() + i * stride_, stride_};
  }
  /// Position of s in the enumeration; throws std::invalid_argument when s
  /// has the wrong dimensions.
  std::size_t index_of(const Subspace& s) const;
  std::size_t index_of_entries(std::span<const std::uint32_t> rref_entries) const;

 private:
  int n_;
  int k_;
  std::size_t stride_;
  std::size_t count_;
  std::vector<std::uint32_t> entries_;
};

/// Points on each k-space, and k-spaces through each point.
struct Incidence {
  std::vector<std::vector<std::uint32_t>> points_on;
  std::vector<std::vector<std::uint32_t>> through_point;
};

/// PG(n,q) with lazily enumerated subspace lists. Thread-safe; the lists are
/// immutable once built.
class ProjectiveSpace {
 public:
  ProjectiveSpace(FieldPtr field, int n);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int n() const { return n_; }
  std::uint32_t q() const { return field_->q(); }

  const SubspaceList& subspaces(int k) const;
  std::size_t count(int k) const { return subspaces(k).size(); }

  /// Index of the point spanned by a nonzero vector.
  std::uint32_t point_index(std::span<const std::uint32_t> v) const;
  std::span<const std::uint32_t> point_vector(std::uint32_t idx) const {
    return subspaces(0).entries_of(idx);
  }
  /// Sorted indices of the points of s.
  std::vector<std::uint32_t> points_of(const Subspace& s) const;
  /// Sorted indices of the i-spaces contained in s.
  std::vector<std::uint32_t> subspaces_within(const Subspace& s, int i) const;

  const Incidence& incidence(int k) const;

 private:
  FieldPtr field_;
  int n_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<SubspaceList>> lists_;
  mutable std::vector<std::unique_ptr<Incidence>> incidences_;
  mutable std::vector<std::uint32_t> point_table_;  // base-q vector code -> point index
  mutable bool point_table_built_ = false;
};

using ProjectiveSpacePtr = std::shared_ptr<const ProjectiveSpace>;

/// Scales v so that its first nonzero entry is 1. Returns false on zero.
bool normalize(const Field& f, std::span<std::uint32_t> v);

}  // namespace galois
