#include "galois/blocking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "galois/parallel.hpp"
#include "galois/random.hpp"

namespace galois {

BlockingGeometry::BlockingGeometry(const Quadric& quadric, std::vector<std::vector<std::uint32_t>> lines)
    : quadric_(&quadric), line_points_(std::move(lines)) {
  std::sort(line_points_.begin(), line_points_.end());
  lines_through_.resize(quadric.space().count(0));
  for (std::size_t l = 0; l < line_points_.size(); ++l)
    for (std::uint32_t pt : line_points_[l]) lines_through_[pt].push_back(static_cast<std::uint32_t>(l));
}

namespace {

std::vector<std::vector<std::uint32_t>> scan_lines(const Quadric& quadric) {
  const Incidence& inc = quadric.space().incidence(1);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t l : lines_on_quadric(quadric)) out.push_back(inc.points_on[l]);
  return out;
}

std::vector<std::vector<std::uint32_t>> klein_lines(const KleinContext& ctx) {
  const ProjectiveSpace& pg3 = ctx.pg3();
  const SubspaceList& planes = pg3.subspaces(2);
  const auto& through = pg3.incidence(1).through_point;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t pi = 0; pi < planes.size(); ++pi) {
    const Subspace plane = planes.at(pi);
    const auto in_plane = pg3.subspaces_within(plane, 1);
    for (std::uint32_t pt : pg3.points_of(plane)) {
      std::vector<std::uint32_t> pencil;
      std::set_intersection(in_plane.begin(), in_plane.end(), through[pt].begin(), through[pt].end(),
                            std::back_inserter(pencil));
      std::vector<std::uint32_t> images;
      for (std::uint32_t l : pencil) images.push_back(ctx.plucker(l));
      std::sort(images.begin(), images.end());
      out.push_back(std::move(images));
    }
  }
  return out;
}

}  // namespace

BlockingGeometry::BlockingGeometry(const Quadric& quadric) : BlockingGeometry(quadric, scan_lines(quadric)) {}

BlockingGeometry BlockingGeometry::from_klein(const KleinContext& ctx) {
  return BlockingGeometry(ctx.quadric(), klein_lines(ctx));
}

std::vector<std::uint32_t> BlockingGeometry::make_point_set(std::vector<std::uint32_t> points) const {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::uint32_t pt : points)
    if (!quadric_->contains(pt)) throw std::invalid_argument("point " + std::to_string(pt) + " is not on the quadric");
  return points;
}

namespace {

std::vector<std::uint32_t> line_counts(const BlockingGeometry& geom, std::span<const std::uint32_t> points) {
  std::vector<std::uint32_t> count(geom.line_count(), 0);
  for (std::uint32_t pt : points)
    for (std::uint32_t l : geom.lines_through(pt)) ++count[l];
  return count;
}

}  // namespace

bool is_blocking(const BlockingGeometry& geom, std::span<const std::uint32_t> points) {
  const auto count = line_counts(geom, points);
  return std::find(count.begin(), count.end(), 0u) == count.end();
}

bool is_minimal(const BlockingGeometry& geom, std::span<const std::uint32_t> points) {
  const auto count = line_counts(geom, points);
  if (std::find(count.begin(), count.end(), 0u) != count.end()) throw std::invalid_argument("set does not block");
  for (std::uint32_t pt : points) {
    const auto& ls = geom.lines_through(pt);
    if (std::none_of(ls.begin(), ls.end(), [&](std::uint32_t l) { return count[l] == 1; })) return false;
  }
  return true;
}

std::vector<std::uint32_t> minimalize(const BlockingGeometry& geom, std::span<const std::uint32_t> points,
                                      std::span<const std::uint32_t> order) {
  auto count = line_counts(geom, points);
  if (std::find(count.begin(), count.end(), 0u) != count.end()) throw std::invalid_argument("set does not block");
  std::vector<char> in(geom.quadric().space().count(0), 0);
  for (std::uint32_t pt : points) in[pt] = 1;
  std::vector<std::uint32_t> visit(order.begin(), order.end());
  std::vector<std::uint32_t> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  visit.insert(visit.end(), sorted.begin(), sorted.end());
  for (std::uint32_t pt : visit) {
    if (pt >= in.size() || !in[pt]) continue;
    const auto& ls = geom.lines_through(pt);
    if (std::any_of(ls.begin(), ls.end(), [&](std::uint32_t l) { return count[l] < 2; })) continue;
    in[pt] = 0;
    for (std::uint32_t l : ls) --count[l];
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t pt : sorted)
    if (in[pt]) out.push_back(pt);
  return out;
}

CanonicalBlockers canonical_blockers(const KleinContext& ctx) {
  const Quadric& q = ctx.quadric();
  const ProjectiveSpace& pg5 = ctx.pg5();
  const Polarity pol(q.form().polar());
  CanonicalBlockers out;

  std::uint32_t off = 0;
  while (q.contains(off)) ++off;
  Matrix m(0, 6);
  m.append_row(pg5.point_vector(off));
  out.parabolic_hyperplane = pol.perp(Subspace::from_rows(ctx.field(), std::move(m)));
  out.parabolic = ctx.section_points(out.parabolic_hyperplane);

  out.vertex = q.points().front();
  out.tangent_hyperplane = tangent_hyperplane(q, out.vertex);
  for (std::uint32_t pt : ctx.section_points(out.tangent_hyperplane))
    if (pt != out.vertex) out.tangent_minus_vertex.push_back(pt);
  return out;
}

Containment hyperplane_containment(const ProjectiveSpace& space, std::span<const std::uint32_t> points) {
  const Field& f = space.field();
  Matrix m(0, static_cast<std::size_t>(space.n() + 1));
  for (std::uint32_t pt : points) m.append_row(space.point_vector(pt));
  Containment c;
  c.rank = rank(f, m);
  c.contained = c.rank <= static_cast<std::size_t>(space.n());
  if (c.contained) {
    const Matrix ns = nullspace(f, m);
    Matrix h(0, m.cols);
    h.append_row(ns.row(0));
    c.witness = Subspace::from_rows(f, nullspace(f, h));
  }
  return c;
}

ProbeReport probe_theorem(const KleinContext& ctx, const BlockingGeometry& geom, std::size_t trials,
                          std::uint64_t seed, unsigned threads) {
  const std::uint32_t q = ctx.q();
  const Quadric& quadric = ctx.quadric();
  const Field& f = ctx.field();
  const CanonicalBlockers canon = canonical_blockers(ctx);
  const auto& all = quadric.points();
  const std::size_t bound = std::size_t{q} * q * q + 2 * q * q + q + 1;

  ProbeReport rep;
  rep.q = q;
  rep.seed = seed;
  rep.asserted = q >= 4;
  rep.trials.resize(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    Rng rng(seed, t);
    ProbeTrial& tr = rep.trials[t];
    tr.index = t;
    tr.strategy = static_cast<int>(t % 3);
    std::vector<std::uint32_t> superset;
    if (tr.strategy == 0) {
      superset = (t / 3) % 2 == 0 ? canon.parabolic : canon.tangent_minus_vertex;
    } else if (tr.strategy == 1) {
      std::vector<std::uint32_t> fn(6, 0);
      while (std::all_of(fn.begin(), fn.end(), [](std::uint32_t x) { return x == 0; }))
        for (auto& x : fn) x = static_cast<std::uint32_t>(rng.below(q));
      for (std::uint32_t pt : all) {
        auto v = ctx.pg5().point_vector(pt);
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < 6; ++i) s = f.add(s, f.mul(fn[i], v[i]));
        if (s == 0) superset.push_back(pt);
      }
    } else {
      superset = all;
    }
    if (tr.strategy != 2) {
      const std::size_t noise = 1 + rng.below(std::size_t{q} * q + q + 1);
      for (std::size_t i = 0; i < noise; ++i) superset.push_back(all[rng.below(all.size())]);
    }
    superset = geom.make_point_set(std::move(superset));
    tr.superset_size = superset.size();
    std::vector<std::uint32_t> order = superset;
    rng.shuffle(order);
    const auto b = minimalize(geom, superset, order);
    tr.size = b.size();
    tr.minimal = is_minimal(geom, b);
    tr.in_range = b.size() <= bound;
    tr.contained = hyperplane_containment(ctx.pg5(), b).contained;
  });
  rep.smallest = SIZE_MAX;
  for (const auto& tr : rep.trials) {
    rep.smallest = std::min(rep.smallest, tr.size);
    if (!tr.in_range) continue;
    ++rep.in_range;
    if (!tr.contained) ++rep.counterexamples;
  }
  if (rep.trials.empty()) rep.smallest = 0;
  return rep;
}

namespace {

struct CoverCounter {
  std::uint32_t q;
  const std::vector<std::vector<std::uint32_t>>* lines;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  // returns true when the bound holds
  bool check(std::span<const std::uint32_t> set, bool& equality) {
    ++epoch;
    std::uint64_t covered = 0;
    for (std::uint32_t l : set)
      for (std::uint32_t pt : (*lines)[l])
        if (stamp[pt] != epoch) {
          stamp[pt] = epoch;
          ++covered;
        }
    const std::uint64_t s = set.size();
    const std::uint64_t lhs = covered * (q + s);
    const std::uint64_t rhs = std::uint64_t{q + 1} * (q + 1) * s;
    equality = lhs == rhs;
    return lhs >= rhs;
  }
};

}  // namespace

CoverReport line_cover_bound_check(std::uint32_t q, std::size_t exhaustive_max, std::size_t random_trials,
                                   std::uint64_t seed) {
  const auto pg2 = std::make_shared<ProjectiveSpace>(make_field_of_order(q), 2);
  const Incidence& inc = pg2->incidence(1);
  const std::size_t nlines = inc.points_on.size();
  CoverCounter counter{q, &inc.points_on, std::vector<std::uint32_t>(pg2->count(0), 0)};
  CoverReport rep;
  rep.q = q;
  auto record = [&](std::span<const std::uint32_t> set) {
    bool eq = false;
    if (!counter.check(set, eq)) ++rep.violations;
    if (eq) ++rep.equality_cases;
  };
  for (std::size_t size = 1; size <= std::min(exhaustive_max, nlines); ++size) {
    std::vector<std::uint32_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0u);
    while (true) {
      record(idx);
      ++rep.exhaustive_sets;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == nlines - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t k = i; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  std::vector<std::uint32_t> all(nlines);
  std::iota(all.begin(), all.end(), 0u);
  for (std::size_t t = 0; t < random_trials; ++t) {
    Rng rng(seed, t);
    const std::size_t size = 1 + rng.below(nlines);
    rng.shuffle(all);
    record(std::span<const std::uint32_t>(all.data(), size));
    ++rep.random_sets;
  }
  return rep;
}

std::string point_set_to_json(const Quadric& quadric, std::span<const std::uint32_t> points) {
  nlohmann::json j;
  j["n"] = quadric.n();
  j["q"] = quadric.space().q();
  const Matrix& c = quadric.form().coeffs();
  nlohmann::json form = nlohmann::json::array();
  for (std::size_t r = 0; r < c.rows; ++r) form.push_back(std::vector<std::uint32_t>(c.row(r).begin(), c.row(r).end()));
  j["form"] = form;
  j["points"] = std::vector<std::uint32_t>(points.begin(), points.end());
  return j.dump();
}

std::vector<std::uint32_t> point_set_from_json(const Quadric& quadric, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed point set: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points")) throw std::invalid_argument("point set needs a \"points\" array");
  if (j.value("n", -1) != quadric.n() || j.value("q", 0u) != quadric.space().q())
    throw std::invalid_argument("point set header names another space");
  if (j.contains("form")) {
    const Matrix& c = quadric.form().coeffs();
    std::vector<std::vector<std::uint32_t>> expect;
    for (std::size_t r = 0; r < c.rows; ++r) expect.emplace_back(c.row(r).begin(), c.row(r).end());
    if (j["form"].get<std::vector<std::vector<std::uint32_t>>>() != expect)
      throw std::invalid_argument("point set header names another quadric");
  }
  auto pts = j["points"].get<std::vector<std::int64_t>>();
  std::vector<std::uint32_t> out;
  const auto npts = static_cast<std::int64_t>(quadric.space().count(0));
  for (std::int64_t x : pts) {
    if (x < 0 || x >= npts) throw std::invalid_argument("point index " + std::to_string(x) + " out of range");
    if (!quadric.contains(static_cast<std::uint32_t>(x)))
      throw std::invalid_argument("point " + std::to_string(x) + " is not on the quadric");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace galois
