#pragma once

// Sets of quadric points meeting every line contained in the quadric.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "galois/forms.hpp"
#include "galois/klein.hpp"

namespace galois {

/// Lines of a quadric as point lists, and the quadric lines through each point.
class BlockingGeometry {
 public:
  /// Lines found by testing every line of the ambient space.
  explicit BlockingGeometry(const Quadric& quadric);
  /// Lines of the Klein quadric built from point-plane flags of PG(3,q): the
  /// pencil of lines through P in pi maps onto a quadric line.
  static BlockingGeometry from_klein(const KleinContext& ctx);

  const Quadric& quadric() const { return *quadric_; }
  std::size_t line_count() const { return line_points_.size(); }
  const std::vector<std::uint32_t>& line_points(std::size_t line) const { return line_points_.at(line); }
  const std::vector<std::uint32_t>& lines_through(std::uint32_t point) const { return lines_through_.at(point); }

  /// Sorts, removes duplicates, and checks that every point is on the quadric.
  std::vector<std::uint32_t> make_point_set(std::vector<std::uint32_t> points) const;

 private:
  BlockingGeometry(const Quadric& quadric, std::vector<std::vector<std::uint32_t>> lines);

  const Quadric* quadric_;
  std::vector<std::vector<std::uint32_t>> line_points_;
  std::vector<std::vector<std::uint32_t>> lines_through_;  // indexed by ambient point
};

bool is_blocking(const BlockingGeometry& geom, std::span<const std::uint32_t> points);
/// Throws std::invalid_argument when the set does not block.
bool is_minimal(const BlockingGeometry& geom, std::span<const std::uint32_t> points);
/// Drops removable points, visiting them in the given order (default:
/// increasing index). A point is removable when every quadric line through
/// it holds another point of the set; removals never make a kept point
/// removable, so one pass yields a minimal set. Throws when the input does
/// not block.
std::vector<std::uint32_t> minimalize(const BlockingGeometry& geom, std::span<const std::uint32_t> points,
                                      std::span<const std::uint32_t> order = {});

struct CanonicalBlockers {
  std::vector<std::uint32_t> parabolic;
  Subspace parabolic_hyperplane;
  std::vector<std::uint32_t> tangent_minus_vertex;
  Subspace tangent_hyperplane;
  std::uint32_t vertex = 0;
};

/// Parabolic section: the polar hyperplane of the first point off the
/// quadric. Tangent section: the polar hyperplane of the first quadric point,
/// without that point.
CanonicalBlockers canonical_blockers(const KleinContext& ctx);

struct Containment {
  bool contained = false;
  std::optional<Subspace> witness;
  std::size_t rank = 0;
};

Containment hyperplane_containment(const ProjectiveSpace& space, std::span<const std::uint32_t> points);

struct ProbeTrial {
  std::size_t index = 0;
  int strategy = 0;  // 0 canonical plus noise, 1 hyperplane section plus noise, 2 whole quadric
  std::size_t superset_size = 0;
  std::size_t size = 0;
  bool minimal = false;
  bool in_range = false;  // size <= q^3 + 2q^2 + q + 1
  bool contained = false;
};

struct ProbeReport {
  std::uint32_t q = 0;
  std::uint64_t seed = 0;
  bool asserted = false;  // the classification applies only for q >= 4
  std::vector<ProbeTrial> trials;
  std::size_t in_range = 0;
  std::size_t counterexamples = 0;  // in range and not in a hyperplane
  std::size_t smallest = 0;
  bool passed() const { return !asserted || counterexamples == 0; }
};

ProbeReport probe_theorem(const KleinContext& ctx, const BlockingGeometry& geom, std::size_t trials,
                          std::uint64_t seed, unsigned threads = 1);

struct CoverReport {
  std::uint32_t q = 0;
  std::size_t exhaustive_sets = 0;
  std::size_t random_sets = 0;
  std::size_t violations = 0;
  std::size_t equality_cases = 0;
  bool passed() const { return violations == 0; }
};

/// covered * (q + |S|) >= (q + 1)^2 |S| for sets S of lines of PG(2,q):
/// every S with |S| <= exhaustive_max, then random_trials random sets.
CoverReport line_cover_bound_check(std::uint32_t q, std::size_t exhaustive_max, std::size_t random_trials,
                                   std::uint64_t seed);

/// Point sets on disk: {"n", "q", "form": [[...]], "points": [...]}.
std::string point_set_to_json(const Quadric& quadric, std::span<const std::uint32_t> points);
/// Throws std::invalid_argument when the header does not match quadric.
std::vector<std::uint32_t> point_set_from_json(const Quadric& quadric, const std::string& text);

}  // namespace galois
