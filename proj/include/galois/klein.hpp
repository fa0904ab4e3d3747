#pragma once

// Klein correspondence: lines of PG(3,q) <-> points of the Klein quadric
// p01 p23 - p02 p13 + p03 p12 = 0 in PG(5,q), with Pluecker coordinates in
// the order (p01, p02, p03, p12, p13, p23).

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "galois/forms.hpp"
#include "galois/fp_vector.hpp"
#include "galois/proj_space.hpp"

namespace galois {

enum class SectionKind { Parabolic, Tangent };

struct SectionInfo {
  SectionKind kind = SectionKind::Parabolic;
  QuadricType type;
  std::optional<std::uint32_t> vertex;  // tangent sections: the point of contact
};

class KleinContext {
 public:
  explicit KleinContext(FieldPtr field);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t q() const { return field_->q(); }
  const ProjectiveSpace& pg3() const { return *pg3_; }
  const ProjectiveSpacePtr& pg3_ptr() const { return pg3_; }
  const ProjectiveSpace& pg5() const { return *pg5_; }
  const ProjectiveSpacePtr& pg5_ptr() const { return pg5_; }
  const Quadric& quadric() const { return *quadric_; }

  /// Normalized Pluecker vector of two spanning points.
  std::vector<std::uint32_t> plucker_vector(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) const;
  /// Point index in PG(5,q); throws std::invalid_argument if l is not a line of PG(3,q).
  std::uint32_t plucker(const Subspace& l) const;
  std::uint32_t plucker(std::size_t line_index) const { return image_.at(line_index); }
  /// Throws std::invalid_argument for a point off the quadric.
  Subspace unplucker(std::uint32_t point) const;
  std::size_t unplucker_index(std::uint32_t point) const;

  /// Images of the lines in a plane, and of the lines through a point.
  Subspace greek_plane(const Subspace& plane) const;
  Subspace latin_plane(std::uint32_t point) const;

  /// Linear functional (6 coordinates) vanishing on the hyperplane.
  std::vector<std::uint32_t> hyperplane_functional(const Subspace& h) const;
  /// Hyperplane with the given nonzero functional.
  Subspace hyperplane(std::span<const std::uint32_t> functional) const;

  /// Lines of PG(3,q) whose image lies in h.
  FpVector section_to_lineset(const Subspace& h) const;
  std::vector<std::uint32_t> section_lines(const Subspace& h) const;
  /// Quadric points in h.
  std::vector<std::uint32_t> section_points(const Subspace& h) const;
  SectionInfo classify_section(const Subspace& h) const;
  /// Alternating form on F_q^4 whose absolute lines are the lines of the
  /// section: entry (i,j) is the functional's value at p_ij.
  BilinearForm section_form(const Subspace& h) const;

  /// Row-vector map M with x = M p turning the Grassmann form into
  /// x0 x1 + x2 x3 + x4 x5.
  Matrix klein_to_standard() const;

 private:
  FieldPtr field_;
  ProjectiveSpacePtr pg3_;
  ProjectiveSpacePtr pg5_;
  std::unique_ptr<Quadric> quadric_;
  std::vector<std::uint32_t> image_;    // line index -> PG(5,q) point
  std::vector<std::int64_t> preimage_;  // PG(5,q) point -> line index or -1
};

/// The Grassmann quadratic form in Pluecker order.
QuadraticForm klein_form(const FieldPtr& field);

}  // namespace galois
