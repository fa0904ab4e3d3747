#pragma once

// Bilinear and quadratic forms, polarities and quadrics of PG(n,q).

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "galois/finite_field.hpp"
#include "galois/proj_space.hpp"

namespace galois {

enum class FormKind { Symmetric, Alternating };

class BilinearForm {
 public:
  /// Validates the symmetry (or alternation) of gram.
  BilinearForm(FieldPtr field, Matrix gram, FormKind kind);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Matrix& gram() const { return gram_; }
  FormKind kind() const { return kind_; }
  int n() const { return static_cast<int>(gram_.rows) - 1; }

  std::uint32_t eval(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) const;
  bool is_degenerate() const;

  bool operator==(const BilinearForm& o) const { return gram_.data == o.gram_.data && kind_ == o.kind_; }

 private:
  FieldPtr field_;
  Matrix gram_;
  FormKind kind_;
};

/// f(x) = sum_{i <= j} coeffs[i][j] x_i x_j.
class QuadraticForm {
 public:
  QuadraticForm(FieldPtr field, Matrix coeffs);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Matrix& coeffs() const { return coeffs_; }
  int n() const { return static_cast<int>(coeffs_.rows) - 1; }

  std::uint32_t eval(std::span<const std::uint32_t> x) const;
  /// b(x,y) = f(x+y) - f(x) - f(y).
  BilinearForm polar() const;
  /// The form y -> f(y * basis) on F_q^{rows of basis}.
  QuadraticForm restrict_to(const Matrix& basis) const;

 private:
  FieldPtr field_;
  Matrix coeffs_;
};

/// Inclusion-reversing involution of a non-degenerate reflexive form.
class Polarity {
 public:
  /// Throws std::invalid_argument for a degenerate form.
  explicit Polarity(BilinearForm form);
  const BilinearForm& form() const { return form_; }
  Subspace perp(const Subspace& s) const;

 private:
  BilinearForm form_;
};

/// Standard alternating form x0 y1 - x1 y0 + ... on F_q^{n+1}; n odd.
BilinearForm symplectic_form(int n, const FieldPtr& field);

/// Lines l of PG(3,q) with l inside its own polar.
std::vector<std::uint32_t> symplectic_absolute_lines(const ProjectiveSpace& pg3, const Polarity& pol);

/// Pfaffian-based enumeration of all non-degenerate alternating forms on
/// F_q^4 up to scalars; representative has its first nonzero entry equal to 1.
std::vector<Polarity> enumerate_symplectic_polarities(const FieldPtr& field);

/// Cone over a non-degenerate base: radical dimension and the base type.
struct QuadricType {
  int vertex_dim = -1;  // projective dimension of the singular isotropic radical
  int base_dim = -1;    // projective dimension of the non-degenerate base
  int base_eps = 1;     // -1 elliptic, 0 parabolic, +1 hyperbolic

  bool degenerate() const { return vertex_dim >= 0; }
  bool operator==(const QuadricType&) const = default;
};

/// Witt-style classification of f restricted to s.
QuadricType classify_quadric(const QuadraticForm& f, const Subspace& s);
QuadricType classify_quadric(const QuadraticForm& f);

/// (q^n - 1)/(q - 1) + eps q^{(n-1)/2}.
std::uint64_t quadric_point_count(int n, int eps, std::uint64_t q);
/// Points of a cone with the given vertex dimension over Q^eps(base_dim, q).
std::uint64_t cone_point_count(const QuadricType& t, std::uint64_t q);

class Quadric {
 public:
  Quadric(ProjectiveSpacePtr space, QuadraticForm form);

  const ProjectiveSpace& space() const { return *space_; }
  const ProjectiveSpacePtr& space_ptr() const { return space_; }
  const QuadraticForm& form() const { return form_; }
  const QuadricType& type() const { return type_; }
  int n() const { return space_->n(); }
  const std::vector<std::uint32_t>& points() const { return points_; }
  bool contains(std::uint32_t point) const;

 private:
  ProjectiveSpacePtr space_;
  QuadraticForm form_;
  QuadricType type_;
  std::vector<std::uint32_t> points_;
};

/// Canonical non-degenerate quadric. eps = +1/-1 need n odd, eps = 0 needs n
/// even; for eps = -1 the anisotropic binary part is the lexicographically
/// least irreducible a x^2 + b xy + c y^2.
Quadric standard_quadric(ProjectiveSpacePtr space, int eps);
QuadraticForm standard_quadratic_form(const FieldPtr& field, int n, int eps);

/// Indices (into the line list) of lines contained in the quadric.
std::vector<std::uint32_t> lines_on_quadric(const Quadric& quadric);

struct GeneratorClasses {
  int dim = 0;
  std::vector<Subspace> class_a;  // contains the first generator in canonical order
  std::vector<Subspace> class_b;
};

/// Generators of a hyperbolic quadric with n in {3, 5}.
GeneratorClasses generators(const Quadric& quadric);

/// The two reguli of x0 x1 = x2 x3, parameterized by <(a,b)> in PG(1,q):
/// R+ = <(a,0,b,0),(0,b,0,a)>, R- = <(a,0,0,b),(0,b,a,0)>.
std::pair<std::vector<Subspace>, std::vector<Subspace>> standard_reguli(const FieldPtr& field);
/// Quadratic form x0 x1 - x2 x3 on F_q^4.
QuadraticForm regulus_quadric_form(const FieldPtr& field);

/// P^perp for P on the quadric.
Subspace tangent_hyperplane(const Quadric& quadric, std::uint32_t point);

/// Union of <vertex, P> over base points P.
std::vector<std::uint32_t> cone(const ProjectiveSpace& space, const Subspace& vertex,
                                std::span<const std::uint32_t> base);

}  // namespace galois
