#include <doctest.h>

#include "galois/codes.hpp"
#include "galois/random.hpp"

using namespace galois;

namespace {

ProjectiveSpacePtr pg(std::uint32_t q, int n) { return std::make_shared<ProjectiveSpace>(make_field_of_order(q), n); }

// rank of the line/line meeting matrix built from pairwise incidence tests
std::size_t oracle_line_code_dim(std::uint32_t q) {
  auto field = make_field_of_order(q);
  auto prime = make_field(field->p(), 1);
  SubspaceList lines(*field, 3, 1);
  Matrix m(0, lines.size());
  for (std::size_t a = 0; a < lines.size(); ++a) {
    std::vector<std::uint32_t> row(lines.size());
    for (std::size_t b = 0; b < lines.size(); ++b) row[b] = incident(*field, lines.at(a), lines.at(b)) ? 1 : 0;
    m.append_row(row);
  }
  return rank(*prime, m);
}

// proj^(0) straight from the definition
FpVector oracle_proj0(const ProjectiveSpace& space, const FpVector& c) {
  const auto& pts = space.subspaces(0);
  const auto& lines = space.subspaces(1);
  FpVector out(c.p(), pts.size(), {space.n(), space.q(), 0});
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (std::size_t x = 0; x < pts.size(); ++x)
      if (contains(space.field(), lines.at(l), pts.at(x))) out.set(x, out[x] + c[l]);
  return out;
}

}  // namespace

TEST_CASE("dimension formula values") {
  CHECK(dimension_formula(2) == 7);
  CHECK(dimension_formula(3) == 20);
  CHECK(dimension_formula(4) == 37);
  CHECK(dimension_formula(5) == 86);
  CHECK(dimension_formula(8) == 217);
  CHECK(dimension_formula(9) == 362);
}

TEST_CASE("C_{1,1}(3,q) dimension against an independent rank") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto space = pg(q, 3);
    const auto code = build_code(space, 1, 1);
    CHECK(code.dimension() == oracle_line_code_dim(q));
    CHECK(code.dimension() == dimension_formula(q));
    CHECK(build_code(space, 1, 1, 3).basis().row(0) == code.basis().row(0));
  }
  CHECK(build_code(pg(5, 3), 1, 1).dimension() == 86);
}

TEST_CASE("characteristic vectors") {
  auto space = pg(2, 3);
  const auto& lines = space->subspaces(1);
  const auto& pts = space->subspaces(0);
  CHECK(weight(char_vector_incidence(*space, lines.at(0), 1)) == 19);
  CHECK(weight(char_vector_incidence(*space, pts.at(3), 1)) == 7);
  CHECK(weight(char_vector_incidence(*space, space->subspaces(2).at(0), 1)) == 35);
  auto space4 = pg(4, 3);
  CHECK(weight(char_vector_incidence(*space4, space4->subspaces(1).at(17), 1)) == 101);
  // meeting_indices agrees with pairwise incidence
  const Subspace l = lines.at(11);
  std::vector<std::uint32_t> expect;
  for (std::uint32_t i = 0; i < lines.size(); ++i)
    if (incident(space->field(), l, lines.at(i))) expect.push_back(i);
  CHECK(meeting_indices(*space, l, 1) == expect);
}

TEST_CASE("extended code") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto space = pg(q, 3);
    const auto base = build_code(space, 1, 1);
    const auto ext = extend_with_symplectic(base);
    CHECK(ext.params().extended);
    auto pols = enumerate_symplectic_polarities(space->field_ptr());
    const auto w = symplectic_vector(*space, pols.front());
    CHECK(weight(w) == (q * q + 1) * (q + 1));
    CHECK(ext.contains(w));
    if (q % 2 == 0) {
      CHECK(base.contains(w));
      CHECK(ext.dimension() == base.dimension());
    } else {
      CHECK_FALSE(base.contains(w));
      CHECK(ext.dimension() > base.dimension());
    }
  }
}

TEST_CASE("membership errors and dual") {
  auto space = pg(2, 3);
  const auto code = build_code(space, 1, 1);
  FpVector wrong(2, 34);
  CHECK_THROWS_AS(code.contains(wrong), std::invalid_argument);
  FpVector wrong_p(3, 35, code.meta());
  CHECK_THROWS_AS(code.in_dual(wrong_p), std::invalid_argument);
  CHECK(code.dual_basis().size() == 35 - 7);
  for (const auto& d : code.dual_basis()) {
    CHECK(code.in_dual(d));
    for (std::size_t i = 0; i < code.dimension(); ++i) CHECK(d.dot(code.basis_row(i)) == 0);
  }
  // all-ones . chi_l = 19 = 1 mod 2
  std::vector<std::uint32_t> all(35);
  for (std::uint32_t i = 0; i < 35; ++i) all[i] = i;
  CHECK_FALSE(code.in_dual(char_vector_set(*space, 1, all)));
}

TEST_CASE("proj map against the definition") {
  for (std::uint32_t q : {2u, 3u}) {
    auto space = pg(q, 3);
    const auto code = build_code(space, 1, 1);
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto c = random_codeword(code, 5, s);
      CHECK(proj_map(*space, c, 0) == oracle_proj0(*space, c));
    }
    // a single line maps onto its points
    const auto e = char_vector_set(*space, 1, std::vector<std::uint32_t>{4});
    CHECK(weight(proj_map(*space, e, 0)) == q + 1);
  }
  auto space = pg(2, 3);
  const auto e = char_vector_set(*space, 1, std::vector<std::uint32_t>{0});
  CHECK_THROWS(proj_map(*space, e, 1));
  // lines -> points inside PG(4,2) via planes
  auto p4 = pg(2, 4);
  const auto plane = char_vector_set(*p4, 2, std::vector<std::uint32_t>{0});
  CHECK(weight(proj_map(*p4, plane, 1)) == 7);
  CHECK(weight(proj_map(*p4, plane, 0)) == 7);
}

TEST_CASE("duality transfer") {
  for (std::uint32_t q : {2u, 3u}) {
    auto space = pg(q, 3);
    const auto lines = build_code(space, 1, 1);
    const auto points = build_code(space, 0, 1);
    const auto r = duality_transfer_check(lines, points, 60, 11);
    CHECK(r.forward_samples == 60);
    CHECK(r.reverse_samples == 60);
    CHECK(r.passed());
  }
}

TEST_CASE("weight distribution for q = 2") {
  auto space = pg(2, 3);
  const auto code = build_code(space, 1, 1);
  const auto dist = weight_distribution(code);
  // brute force over all 2^7 combinations
  std::map<std::size_t, std::uint64_t> brute;
  for (std::uint32_t mask = 0; mask < 128; ++mask) {
    FpVector v = code.zero();
    for (std::size_t i = 0; i < 7; ++i)
      if (mask >> i & 1) v += code.basis_row(i);
    ++brute[weight(v)];
  }
  CHECK(dist == brute);
  std::uint64_t total = 0;
  for (auto [w, c] : dist) total += c;
  CHECK(total == 128);
  CHECK(dist.at(0) == 1);
  CHECK(dist.at(19) == 35);
  CHECK(dist.at(15) >= 28);
}

TEST_CASE("local restrictions") {
  auto space = pg(2, 3);
  const auto code = build_code(space, 1, 1);
  LocalCodes local(space);
  CHECK(local.lines_code().dimension() == 4);   // C_{1,0}(2,2): lines of PG(2,2) by points
  CHECK(local.points_code().dimension() == 4);
  for (std::size_t plane = 0; plane < 15; ++plane) {
    CHECK(local.plane_lines(plane).size() == 7);
    const auto r = restriction_check_plane(local, code, char_vector_incidence(*space, space->subspaces(1).at(plane), 1),
                                           plane);
    CHECK(r.source_in_code);
    CHECK(r.restricted_in_code);
  }
  for (std::uint32_t pt = 0; pt < 15; ++pt) {
    const auto c = random_codeword(code, 2, pt);
    CHECK(restriction_check_point(local, code, c, pt).restricted_in_code);
    CHECK(restriction_check_plane(local, code, c, pt).restricted_in_code);
  }
  // plane_lines really lie in their plane
  const auto& planes = space->subspaces(2);
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (auto l : local.plane_lines(i)) REQUIRE(contains(space->field(), planes.at(i), space->subspaces(1).at(l)));
  for (std::uint32_t pt = 0; pt < 15; ++pt)
    for (auto l : local.star_lines(pt)) REQUIRE(contains(space->field(), space->subspaces(1).at(l), space->subspaces(0).at(pt)));
}

TEST_CASE("inner product audit") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    auto space = pg(q, 3);
    LineFamilies fam(*space);
    CHECK(fam.in_plane.size() == space->count(2));
    CHECK(fam.through_point.size() == space->count(0));
    CHECK(fam.pencils.size() == space->count(0) * (q * q + q + 1));
    const auto chi = char_vector_incidence(*space, space->subspaces(1).at(0), 1);
    auto a = inner_product_audit(fam, chi);
    CHECK(a.constant);
    CHECK(a.alpha == 1);
    a = inner_product_audit(fam, char_vector_set(*space, 1, std::vector<std::uint32_t>{0}));
    CHECK_FALSE(a.constant);
    a = inner_product_audit(fam, FpVector(space->field().p(), space->count(1), chi.meta()));
    CHECK(a.constant);
    CHECK(a.alpha == 0);
  }
  auto space = pg(5, 3);
  LineFamilies fam(*space);
  const auto w = symplectic_vector(*space, enumerate_symplectic_polarities(space->field_ptr()).front());
  const auto a = inner_product_audit(fam, 2u * w);
  CHECK(a.constant);
  CHECK(a.alpha == 2);
}

TEST_CASE("parity dichotomy") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const auto r = general_n_symplectic_check(1, q);
    CHECK(r.passed);
    CHECK(r.congruence_holds == r.lines);
    CHECK(r.class_identity_holds == r.lines);
    if (q % 2 == 0) {
      CHECK(r.sum_is_absolute);
      CHECK(r.sum_in_code);
      CHECK(r.absolute_lines == (q * q + 1) * (q + 1));
      CHECK(r.lines_on_quadric == 2 * (q + 1));
    } else {
      CHECK(r.witness_orthogonal);
      CHECK(r.witness_proj_zero);
      CHECK(r.absolute_in_plus == 2);
      CHECK(r.absolute_in_minus == q + 1);
      CHECK(r.witness_product == 1);  // 2 - (q + 1) mod p
      CHECK_FALSE(r.symplectic_in_code);
    }
  }
  const auto r = general_n_symplectic_check(2, 2);
  CHECK(r.lines == 651);
  CHECK(r.passed);
  CHECK(r.sum_is_absolute);
  CHECK(r.sum_in_code);
}

TEST_CASE("build errors") {
  auto space = pg(2, 3);
  CHECK_THROWS(build_code(space, 3, 1));
  CHECK_THROWS(build_code(space, 1, -1));
  const auto pts = build_code(space, 0, 1);
  CHECK_THROWS(extend_with_symplectic(pts));
  CHECK_THROWS(general_n_symplectic_check(3, 2));
}
