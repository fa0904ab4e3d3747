#pragma once

// Codes spanned by incidence vectors of subspaces of PG(n,q).
//
// C_{j,k}(n,q) is the F_p-span of the vectors chi_kappa^{(j)} over the
// j-spaces of PG(n,q), one for every k-space kappa, where chi_kappa^{(j)}
// marks the j-spaces meeting kappa. Coordinates follow the canonical
// SubspaceList order.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "galois/forms.hpp"
#include "galois/fp_linalg.hpp"
#include "galois/fp_vector.hpp"
#include "galois/proj_space.hpp"

namespace galois {

struct CodeParams {
  int n = 3;
  int j = 1;
  int k = 1;
  bool extended = false;  // augmented with all symplectic absolute-line vectors
  bool operator==(const CodeParams&) const = default;
};

class LinearCode {
 public:
  LinearCode(ProjectiveSpacePtr space, CodeParams params, RowEchelon basis);

  const ProjectiveSpace& space() const { return *space_; }
  const ProjectiveSpacePtr& space_ptr() const { return space_; }
  const CodeParams& params() const { return params_; }
  std::uint32_t p() const { return basis_.p(); }
  std::size_t length() const { return basis_.length(); }
  std::size_t dimension() const { return basis_.rank(); }
  const RowEchelon& basis() const { return basis_; }
  VectorMeta meta() const { return {params_.n, space_->q(), params_.j}; }

  FpVector basis_row(std::size_t i) const;
  FpVector zero() const { return FpVector(p(), length(), meta()); }

  /// Throws std::invalid_argument on a length or field mismatch.
  bool contains(const FpVector& v) const;
  /// v . g = 0 for every basis row g.
  bool in_dual(const FpVector& v) const;
  /// Basis of the dual code, computed once and shared between copies.
  const std::vector<FpVector>& dual_basis() const;

 private:
  void check(const FpVector& v) const;

  struct DualCache {
    std::once_flag once;
    std::vector<FpVector> rows;
  };

  ProjectiveSpacePtr space_;
  CodeParams params_;
  RowEchelon basis_;
  std::shared_ptr<DualCache> dual_;
};

/// Indices of the j-spaces meeting kappa, sorted.
std::vector<std::uint32_t> meeting_indices(const ProjectiveSpace& space, const Subspace& kappa, int j);

/// 0/1 vector over the j-spaces of space with the given support.
FpVector char_vector_set(const ProjectiveSpace& space, int j, std::span<const std::uint32_t> support);
/// chi_kappa^{(j)}.
FpVector char_vector_incidence(const ProjectiveSpace& space, const Subspace& kappa, int j);

/// generators x length limit for build_code
inline constexpr std::uint64_t kCodeBudget = 200'000'000;

/// C_{j,k}(n,q) with 0 <= j, k < n. Throws BudgetError when the generator
/// matrix would be too large.
LinearCode build_code(const ProjectiveSpacePtr& space, int j, int k, unsigned threads = 1);
/// C(q): C_{1,1}(3,q) plus the absolute-line vectors of every symplectic
/// polarity. base must be C_{1,1}(3,q).
LinearCode extend_with_symplectic(const LinearCode& base);
LinearCode build_extended_code(const ProjectiveSpacePtr& pg3, unsigned threads = 1);

/// q ((2p^2+1)/3)^h + 1
std::uint64_t dimension_formula(std::uint32_t q);

/// proj^{(i)}(c)(iota) = sum of c over the j-spaces containing iota; 0 <= i < j.
FpVector proj_map(const ProjectiveSpace& space, const FpVector& c, int i);

struct DualityReport {
  std::size_t forward_samples = 0;
  std::size_t forward_pass = 0;  // c in the dual and proj(c) in the dual
  std::size_t reverse_samples = 0;
  std::size_t reverse_pass = 0;  // c outside the dual and proj(c) outside it
  bool passed() const { return forward_pass == forward_samples && reverse_pass == reverse_samples; }
};

/// Samples the equivalence c in C_{1,1}(3,q)^perp <=> proj^{(0)}(c) in
/// C_{0,1}(3,q)^perp in both directions.
DualityReport duality_transfer_check(const LinearCode& lines, const LinearCode& points, std::size_t samples,
                                     std::uint64_t seed);

/// Counts of codewords per weight; requires p^dim <= 2^24.
std::map<std::size_t, std::uint64_t> weight_distribution(const LinearCode& code);

/// Random combination of basis rows.
FpVector random_codeword(const LinearCode& code, std::uint64_t seed, std::uint64_t stream);
FpVector random_dual_codeword(const LinearCode& code, std::uint64_t seed, std::uint64_t stream);

/// Absolute-line vector of a symplectic polarity of PG(3,q).
FpVector symplectic_vector(const ProjectiveSpace& pg3, const Polarity& pol);

/// Codes on PG(2,q) used for local restrictions of vectors on the lines of
/// PG(3,q): C_{1,0}(2,q) on lines of a plane and C_{0,1}(2,q) on points of
/// the quotient at a point.
class LocalCodes {
 public:
  explicit LocalCodes(const ProjectiveSpacePtr& pg3);

  const ProjectiveSpace& plane_space() const { return *pg2_; }
  const LinearCode& lines_code() const { return lines_code_; }
  const LinearCode& points_code() const { return points_code_; }

  /// c on the lines of the plane with the given index, as a vector over the
  /// lines of PG(2,q) in the plane's own coordinates.
  FpVector restrict_to_plane(const FpVector& c, std::size_t plane) const;
  /// c on the lines through point, as a vector over the points of the
  /// quotient PG(2,q).
  FpVector restrict_to_point(const FpVector& c, std::uint32_t point) const;

  /// Lines of PG(3,q) in the plane, ordered like the lines of PG(2,q).
  const std::vector<std::uint32_t>& plane_lines(std::size_t plane) const { return plane_lines_.at(plane); }
  /// Lines of PG(3,q) through the point, ordered like the points of PG(2,q).
  const std::vector<std::uint32_t>& star_lines(std::uint32_t point) const { return star_lines_.at(point); }

 private:
  ProjectiveSpacePtr pg3_;
  ProjectiveSpacePtr pg2_;
  LinearCode lines_code_;
  LinearCode points_code_;
  std::vector<std::vector<std::uint32_t>> plane_lines_;
  std::vector<std::vector<std::uint32_t>> star_lines_;
};

struct RestrictionResult {
  bool source_in_code = false;
  bool restricted_in_code = false;
  FpVector restricted;
};

RestrictionResult restriction_check_plane(const LocalCodes& local, const LinearCode& code, const FpVector& c,
                                          std::size_t plane);
RestrictionResult restriction_check_point(const LocalCodes& local, const LinearCode& code, const FpVector& c,
                                          std::uint32_t point);

/// Sets of lines used by the inner product audit.
struct LineFamilies {
  explicit LineFamilies(const ProjectiveSpace& pg3);
  std::vector<std::vector<std::uint32_t>> in_plane;       // per plane
  std::vector<std::vector<std::uint32_t>> through_point;  // per point
  std::vector<std::vector<std::uint32_t>> pencils;        // per incident (point, plane)
};

struct AuditResult {
  bool constant = true;
  std::uint32_t alpha = 0;
  std::size_t sets = 0;
};

/// c . chi_S over all lines, lines in a plane, lines through a point and
/// lines through a point in a plane.
AuditResult inner_product_audit(const LineFamilies& families, const FpVector& c);

struct SymplecticParityReport {
  int n = 1;  // ambient PG(2n+1,q)
  std::uint32_t q = 2;
  std::size_t code_dim = 0;
  std::size_t lines = 0;
  // q even
  bool sum_is_absolute = false;      // class sum == chi of lines inside their polar
  bool sum_in_code = false;
  std::size_t absolute_lines = 0;
  std::size_t lines_on_quadric = 0;
  // every q
  std::size_t congruence_holds = 0;      // lines with c(l) = m1 mod p
  std::size_t class_identity_holds = 0;  // c(l) = m1 prod(q^i+1) - q m2 with m2 in the class
  std::size_t total_identity_holds = 0;  // same with m2 over all generators
  // q odd
  bool witness_orthogonal = false;  // chi_{R+} - chi_{R-} orthogonal to the code
  bool witness_proj_zero = false;
  std::uint32_t witness_product = 0;  // chi_S . (chi_{R+} - chi_{R-}) mod p
  std::size_t absolute_in_plus = 0;
  std::size_t absolute_in_minus = 0;
  bool symplectic_in_code = false;
  bool passed = false;
};

/// The parity dichotomy for the absolute lines of W(2n+1,q) in C_{1,n}(2n+1,q).
SymplecticParityReport general_n_symplectic_check(int n, std::uint32_t q, unsigned threads = 1,
                                                  const LinearCode* prebuilt = nullptr);

}  // namespace galois
