#include <doctest.h>

#include <map>
#include <set>

#include "galois/forms.hpp"

using namespace galois;

namespace {

ProjectiveSpacePtr space(std::uint32_t q, int n) { return std::make_shared<ProjectiveSpace>(make_field_of_order(q), n); }

// brute-force count of non-degenerate alternating 4x4 matrices up to scalars
std::size_t brute_polarity_count(std::uint32_t q) {
  auto f = make_field_of_order(q);
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<std::uint32_t> a(6, 0);
  const std::size_t pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& x : a) {
      x = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    Matrix g(4, 4);
    for (int t = 0; t < 6; ++t) {
      g.at(pairs[t][0], pairs[t][1]) = a[t];
      g.at(pairs[t][1], pairs[t][0]) = f->neg(a[t]);
    }
    if (rank(*f, g) < 4) continue;
    std::vector<std::uint32_t> best;
    for (std::uint32_t s = 1; s < q; ++s) {
      std::vector<std::uint32_t> m(g.data);
      for (auto& x : m) x = f->mul(x, s);
      if (best.empty() || m < best) best = m;
    }
    classes.insert(best);
  }
  return classes.size();
}

}  // namespace

TEST_CASE("symplectic form") {
  auto f2 = make_field(2, 1);
  auto b2 = symplectic_form(3, f2);
  CHECK(b2.gram().at(0, 1) == 1);
  CHECK(b2.gram().at(1, 0) == 1);
  CHECK(b2.gram().at(2, 3) == 1);
  auto f3 = make_field(3, 1);
  auto b3 = symplectic_form(3, f3);
  std::vector<std::uint32_t> e0 = {1, 0, 0, 0}, e1 = {0, 1, 0, 0};
  CHECK(b3.eval(e0, e1) == 1);
  CHECK(b3.eval(e1, e0) == 2);
  CHECK_FALSE(b3.is_degenerate());
  CHECK_THROWS(symplectic_form(2, f3));
  ProjectiveSpace pg(f3, 3);
  for (std::uint32_t i = 0; i < pg.count(0); ++i) REQUIRE(b3.eval(pg.point_vector(i), pg.point_vector(i)) == 0);
}

TEST_CASE("quadratic form basics") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = make_field_of_order(q);
    auto form = standard_quadratic_form(f, 5, 1);
    auto b = form.polar();
    if (f->p() == 2) CHECK(b.kind() == FormKind::Alternating);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(b.gram().at(i, i) == (f->p() == 2 ? 0u : b.gram().at(i, i)));
      for (std::size_t j = 0; j < 6; ++j) CHECK(b.gram().at(i, j) == b.gram().at(j, i));
    }
    ProjectiveSpace pg(f, 5);
    for (std::uint32_t i = 0; i < pg.count(0); i += 7) {
      std::vector<std::uint32_t> x(pg.point_vector(i).begin(), pg.point_vector(i).end());
      for (std::uint32_t a = 1; a < q; ++a) {
        std::vector<std::uint32_t> ax(x);
        for (auto& c : ax) c = f->mul(c, a);
        REQUIRE(form.eval(ax) == f->mul(f->mul(a, a), form.eval(x)));
      }
    }
  }
}

TEST_CASE("polarity") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto sp = space(q, 3);
    Polarity pol(symplectic_form(3, sp->field_ptr()));
    const SubspaceList& lines = sp->subspaces(1);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const Subspace l = lines.at(i);
      const Subspace lp = pol.perp(l);
      REQUIRE(lp.dim() == 1);
      REQUIRE(pol.perp(lp) == l);
    }
    for (std::uint32_t pt = 0; pt < sp->count(0); ++pt) {
      const Subspace p = sp->subspaces(0).at(pt);
      const Subspace pp = pol.perp(p);
      REQUIRE(pp.dim() == 2);
      REQUIRE(contains(sp->field(), pp, p));
    }
  }
  auto f = make_field(3, 1);
  CHECK_THROWS(Polarity(BilinearForm(f, Matrix(4, 4), FormKind::Alternating)));
}

TEST_CASE("absolute lines") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto sp = space(q, 3);
    Polarity pol(symplectic_form(3, sp->field_ptr()));
    const auto abs = symplectic_absolute_lines(*sp, pol);
    CHECK(abs.size() == (q + 1) * (q * q + 1));
    std::vector<std::size_t> per_point(sp->count(0), 0);
    for (auto l : abs) {
      const Subspace line = sp->subspaces(1).at(l);
      REQUIRE(contains(sp->field(), pol.perp(line), line));
      for (auto pt : sp->incidence(1).points_on[l]) ++per_point[pt];
    }
    for (auto c : per_point) REQUIRE(c == q + 1);
  }
}

TEST_CASE("polarity enumeration") {
  CHECK(enumerate_symplectic_polarities(make_field(2, 1)).size() == 28);
  CHECK(brute_polarity_count(2) == 28);
  CHECK(enumerate_symplectic_polarities(make_field(3, 1)).size() == brute_polarity_count(3));
  CHECK(enumerate_symplectic_polarities(make_field(2, 2)).size() == 16 * 63);
  CHECK(enumerate_symplectic_polarities(make_field(5, 1)).size() == 25 * 124);
  CHECK_THROWS_AS(enumerate_symplectic_polarities(make_field(11, 1)), BudgetError);
  auto sp = space(3, 3);
  for (const auto& pol : enumerate_symplectic_polarities(sp->field_ptr()))
    REQUIRE(symplectic_absolute_lines(*sp, pol).size() == 40);
}

TEST_CASE("standard quadric point counts") {
  CHECK(standard_quadric(space(2, 5), 1).points().size() == 35);
  CHECK(standard_quadric(space(2, 3), -1).points().size() == 5);
  CHECK(standard_quadric(space(2, 4), 0).points().size() == 15);
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (int n : {3, 4, 5})
      for (int eps : {-1, 0, 1}) {
        if ((eps == 0) != (n % 2 == 0)) continue;
        const Quadric quad = standard_quadric(space(q, n), eps);
        // brute-force isotropic count
        std::size_t iso = 0;
        for (std::uint32_t i = 0; i < quad.space().count(0); ++i) iso += quad.form().eval(quad.space().point_vector(i)) == 0;
        REQUIRE(quad.points().size() == iso);
        REQUIRE(iso == quadric_point_count(n, eps, q));
        REQUIRE(quad.type() == QuadricType{-1, n, eps});
      }
  CHECK_THROWS(standard_quadric(space(2, 4), 1));
}

TEST_CASE("lines on quadrics") {
  CHECK(lines_on_quadric(standard_quadric(space(2, 5), 1)).size() == 105);
  CHECK(lines_on_quadric(standard_quadric(space(2, 3), 1)).size() == 6);
  CHECK(lines_on_quadric(standard_quadric(space(3, 3), -1)).empty());
}

TEST_CASE("generators and classes") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const Quadric q3 = standard_quadric(space(q, 3), 1);
    auto g3 = generators(q3);
    CHECK(g3.class_a.size() == q + 1);
    CHECK(g3.class_b.size() == q + 1);
    const Quadric q5 = standard_quadric(space(q, 5), 1);
    auto g5 = generators(q5);
    CHECK(g5.class_a.size() + g5.class_b.size() == 2 * (q + 1) * (q * q + 1));
    CHECK(g5.class_a.size() == g5.class_b.size());
    const Field& f = q5.space().field();
    if (q <= 3) {
      for (const auto* cls : {&g5.class_a, &g5.class_b})
        for (const auto& a : *cls)
          for (const auto& b : *cls) {
            const int d = meet(f, a, b).dim();
            REQUIRE((d == 0 || d == 2));
          }
      for (const auto& a : g5.class_a)
        for (const auto& b : g5.class_b) {
          const int d = meet(f, a, b).dim();
          REQUIRE((d == -1 || d == 1));
        }
    }
  }
  CHECK_THROWS(generators(standard_quadric(space(2, 3), -1)));
}

TEST_CASE("reguli") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto sp = space(q, 3);
    auto [plus, minus] = standard_reguli(sp->field_ptr());
    CHECK(plus.size() == q + 1);
    CHECK(minus.size() == q + 1);
    const Quadric quad(sp, regulus_quadric_form(sp->field_ptr()));
    for (const auto* reg : {&plus, &minus}) {
      std::map<std::uint32_t, int> cover;
      for (const auto& l : *reg)
        for (auto pt : sp->points_of(l)) ++cover[pt];
      REQUIRE(cover.size() == (q + 1) * (q + 1));
      for (auto [pt, c] : cover) {
        REQUIRE(c == 1);
        REQUIRE(quad.contains(pt));
      }
    }
    if (q % 2 == 1) {
      Polarity pol(symplectic_form(3, sp->field_ptr()));
      const auto abs = symplectic_absolute_lines(*sp, pol);
      auto count = [&](const std::vector<Subspace>& reg) {
        std::size_t c = 0;
        for (const auto& l : reg) c += std::binary_search(abs.begin(), abs.end(), sp->subspaces(1).index_of(l));
        return c;
      };
      CHECK(count(plus) == 2);
      CHECK(count(minus) == q + 1);
    }
  }
}

TEST_CASE("classification of sections") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto sp = space(q, 5);
    const Quadric quad = standard_quadric(sp, 1);
    const Polarity pol(quad.form().polar());
    const SubspaceList& pts = sp->subspaces(0);
    std::size_t tangent = 0, parabolic = 0;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      const Subspace h = pol.perp(pts.at(i));
      const QuadricType t = classify_quadric(quad.form(), h);
      std::size_t in_h = 0;
      for (auto pt : quad.points()) in_h += contains_vector(sp->field(), h, sp->point_vector(pt));
      REQUIRE(in_h == cone_point_count(t, q));
      if (quad.contains(i)) {
        REQUIRE(t == QuadricType{0, 3, 1});
        ++tangent;
      } else {
        REQUIRE(t == QuadricType{-1, 4, 0});
        ++parabolic;
      }
    }
    CHECK(tangent == quad.points().size());
    CHECK(parabolic > 0);
  }
}

TEST_CASE("tangent hyperplanes and cones") {
  auto sp = space(2, 5);
  const Quadric quad = standard_quadric(sp, 1);
  for (auto pt : quad.points()) {
    const Subspace h = tangent_hyperplane(quad, pt);
    REQUIRE(contains_vector(sp->field(), h, sp->point_vector(pt)));
    std::size_t in_h = 0;
    for (auto x : quad.points()) in_h += contains_vector(sp->field(), h, sp->point_vector(x));
    REQUIRE(in_h == 19);
  }
  auto s3 = space(2, 3);
  const Quadric q3 = standard_quadric(s3, 1);
  for (auto pt : q3.points()) {
    const Subspace h = tangent_hyperplane(q3, pt);
    std::size_t in_h = 0;
    for (auto x : q3.points()) in_h += contains_vector(s3->field(), h, s3->point_vector(x));
    REQUIRE(in_h == 5);
  }
  CHECK_THROWS(tangent_hyperplane(quad, [&] {
    std::uint32_t i = 0;
    while (quad.contains(i)) ++i;
    return i;
  }()));

  // point vertex over Q+(3,2) inside PG(4,2)
  auto s4 = space(2, 4);
  const Field& f = s4->field();
  Matrix base_form(5, 5);
  base_form.at(1, 2) = 1;
  base_form.at(3, 4) = 1;
  const QuadraticForm g(s4->field_ptr(), base_form);
  const Subspace vertex = Subspace::from_vectors(f, 4, {{1, 0, 0, 0, 0}});
  std::vector<std::uint32_t> base;
  for (std::uint32_t i = 0; i < s4->count(0); ++i) {
    auto v = s4->point_vector(i);
    if (v[0] == 0 && g.eval(v) == 0) base.push_back(i);
  }
  CHECK(base.size() == 9);
  const auto c = cone(*s4, vertex, base);
  CHECK(c.size() == 19);
  CHECK(cone(*s4, Subspace::empty(4), base) == base);
  CHECK(cone(*s4, vertex, {}) == s4->points_of(vertex));
  CHECK(classify_quadric(g) == QuadricType{0, 3, 1});
  std::vector<std::uint32_t> overlap = {s4->point_index(std::vector<std::uint32_t>{1, 0, 0, 0, 0})};
  CHECK_THROWS(cone(*s4, vertex, overlap));
}
