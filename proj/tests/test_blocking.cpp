#include <doctest.h>

#include <algorithm>
#include <set>

#include "galois/blocking.hpp"
#include "galois/random.hpp"

using namespace galois;

namespace {

// quadric lines as point lists, straight from the ambient line list
std::vector<std::vector<std::uint32_t>> oracle_lines(const Quadric& q) {
  std::vector<std::vector<std::uint32_t>> out;
  const auto& lines = q.space().subspaces(1);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    auto pts = q.space().points_of(lines.at(l));
    if (std::all_of(pts.begin(), pts.end(), [&](std::uint32_t p) { return q.contains(p); })) out.push_back(pts);
  }
  return out;
}

bool oracle_blocks(const std::vector<std::vector<std::uint32_t>>& lines, const std::set<std::uint32_t>& s) {
  for (const auto& l : lines)
    if (std::none_of(l.begin(), l.end(), [&](std::uint32_t p) { return s.count(p) > 0; })) return false;
  return true;
}

bool oracle_minimal(const std::vector<std::vector<std::uint32_t>>& lines, const std::set<std::uint32_t>& s) {
  for (auto p : s) {
    auto t = s;
    t.erase(p);
    if (oracle_blocks(lines, t)) return false;
  }
  return true;
}

// repeatedly drop the least-index removable point
std::set<std::uint32_t> oracle_minimalize(const std::vector<std::vector<std::uint32_t>>& lines,
                                          std::set<std::uint32_t> s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto p : s) {
      auto t = s;
      t.erase(p);
      if (oracle_blocks(lines, t)) {
        s = t;
        changed = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace

TEST_CASE("canonical blockers") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    KleinContext ctx(make_field_of_order(q));
    BlockingGeometry geom(ctx.quadric());
    const auto lines = oracle_lines(ctx.quadric());
    CHECK(geom.line_count() == lines.size());
    const auto cb = canonical_blockers(ctx);
    CHECK(cb.parabolic.size() == (q * q + 1) * (q + 1));
    CHECK(cb.tangent_minus_vertex.size() == q * q * q + 2 * q * q + q);
    for (const auto* set : {&cb.parabolic, &cb.tangent_minus_vertex}) {
      CHECK(is_blocking(geom, *set));
      CHECK(is_minimal(geom, *set));
      const std::set<std::uint32_t> s(set->begin(), set->end());
      CHECK(oracle_blocks(lines, s));
      if (q <= 3) CHECK(oracle_minimal(lines, s));
    }
    const auto pc = hyperplane_containment(ctx.pg5(), cb.parabolic);
    CHECK(pc.contained);
    CHECK(pc.witness == cb.parabolic_hyperplane);
    CHECK(hyperplane_containment(ctx.pg5(), cb.tangent_minus_vertex).witness == cb.tangent_hyperplane);
    CHECK(ctx.classify_section(cb.parabolic_hyperplane).kind == SectionKind::Parabolic);
    CHECK(ctx.classify_section(cb.tangent_hyperplane).vertex == cb.vertex);

    // the full tangent section blocks but the vertex is redundant
    auto full = cb.tangent_minus_vertex;
    full.push_back(cb.vertex);
    full = geom.make_point_set(full);
    CHECK(is_blocking(geom, full));
    CHECK_FALSE(is_minimal(geom, full));
    CHECK(minimalize(geom, full) == cb.tangent_minus_vertex);
  }
}

TEST_CASE("is_blocking and minimalize against brute force") {
  KleinContext ctx(make_field(2, 1));
  BlockingGeometry geom(ctx.quadric());
  const auto lines = oracle_lines(ctx.quadric());
  const auto& pts = ctx.quadric().points();
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint32_t> set;
    for (auto p : pts)
      if (rng.below(3) != 0) set.push_back(p);
    const std::set<std::uint32_t> s(set.begin(), set.end());
    REQUIRE(is_blocking(geom, set) == oracle_blocks(lines, s));
    if (!oracle_blocks(lines, s)) {
      CHECK_THROWS_AS(is_minimal(geom, set), std::invalid_argument);
      CHECK_THROWS(minimalize(geom, set));
      continue;
    }
    REQUIRE(is_minimal(geom, set) == oracle_minimal(lines, s));
    const auto m = minimalize(geom, set);
    const auto expect = oracle_minimalize(lines, s);
    REQUIRE(std::vector<std::uint32_t>(expect.begin(), expect.end()) == m);
    REQUIRE(minimalize(geom, m) == m);
    // any order gives a minimal blocking subset
    auto order = set;
    rng.shuffle(order);
    const auto m2 = minimalize(geom, set, order);
    const std::set<std::uint32_t> s2(m2.begin(), m2.end());
    REQUIRE(oracle_blocks(lines, s2));
    REQUIRE(oracle_minimal(lines, s2));
    REQUIRE(std::includes(s.begin(), s.end(), s2.begin(), s2.end()));
  }
}

TEST_CASE("point set validation") {
  KleinContext ctx(make_field(2, 1));
  BlockingGeometry geom(ctx.quadric());
  const auto& pts = ctx.quadric().points();
  CHECK(geom.make_point_set({pts[3], pts[1], pts[3]}) == std::vector<std::uint32_t>{pts[1], pts[3]});
  std::uint32_t off = 0;
  while (ctx.quadric().contains(off)) ++off;
  CHECK_THROWS_AS(geom.make_point_set({off}), std::invalid_argument);
  for (auto p : pts) CHECK(geom.lines_through(p).size() == 9);  // flags (P, pi) with P on l, l in pi
}

TEST_CASE("hyperplane containment") {
  ProjectiveSpace pg5(make_field(3, 1), 5);
  std::vector<std::uint32_t> frame;
  for (int i = 0; i < 6; ++i) {
    std::vector<std::uint32_t> v(6, 0);
    v[i] = 1;
    frame.push_back(pg5.point_index(v));
  }
  std::vector<std::uint32_t> ones(6, 1);
  frame.push_back(pg5.point_index(ones));
  const auto all = hyperplane_containment(pg5, frame);
  CHECK_FALSE(all.contained);
  CHECK(all.rank == 6);
  CHECK_FALSE(all.witness.has_value());
  std::vector<std::uint32_t> five(frame.begin(), frame.begin() + 5);
  const auto c = hyperplane_containment(pg5, five);
  CHECK(c.contained);
  CHECK(c.rank == 5);
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->dim() == 4);
  for (auto p : five) CHECK(contains(pg5.field(), *c.witness, pg5.subspaces(0).at(p)));
}

TEST_CASE("line cover bound") {
  auto r = line_cover_bound_check(2, 3, 0, 1);
  CHECK(r.exhaustive_sets == 7 + 21 + 35);
  CHECK(r.passed());
  CHECK(r.equality_cases >= 7);
  r = line_cover_bound_check(3, 3, 500, 4);
  CHECK(r.exhaustive_sets == 13 + 78 + 286);
  CHECK(r.random_sets == 500);
  CHECK(r.violations == 0);
  // all lines: covered q^2+q+1, |S| = q^2+q+1 gives equality
  CHECK(line_cover_bound_check(2, 7, 0, 1).equality_cases >= 8);
}

TEST_CASE("probe is deterministic") {
  KleinContext ctx(make_field(2, 2));
  BlockingGeometry geom(ctx.quadric());
  const auto a = probe_theorem(ctx, geom, 12, 42, 1);
  const auto b = probe_theorem(ctx, geom, 12, 42, 3);
  REQUIRE(a.trials.size() == 12);
  CHECK(a.asserted);
  CHECK(a.passed());
  CHECK(a.in_range == b.in_range);
  CHECK(a.smallest == b.smallest);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].size == b.trials[i].size);
    CHECK(a.trials[i].superset_size == b.trials[i].superset_size);
    CHECK(a.trials[i].minimal);
    CHECK(a.trials[i].strategy == b.trials[i].strategy);
    if (a.trials[i].in_range) CHECK(a.trials[i].contained);
  }
  CHECK(a.smallest == 5 * 17);  // the parabolic section
  KleinContext ctx2(make_field(2, 1));
  BlockingGeometry g2(ctx2.quadric());
  CHECK_FALSE(probe_theorem(ctx2, g2, 3, 1).asserted);
}

TEST_CASE("point set json round trip") {
  KleinContext ctx(make_field(3, 1));
  const auto cb = canonical_blockers(ctx);
  const auto text = point_set_to_json(ctx.quadric(), cb.parabolic);
  CHECK(point_set_from_json(ctx.quadric(), text) == cb.parabolic);
  KleinContext other(make_field(2, 1));
  CHECK_THROWS_AS(point_set_from_json(other.quadric(), text), std::invalid_argument);
  CHECK_THROWS(point_set_from_json(ctx.quadric(), "{\"n\": 5}"));
}
