#include "galois/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "galois/blocking.hpp"
#include "galois/klein.hpp"
#include "galois/parallel.hpp"

namespace galois {

namespace {

using ojson = nlohmann::ordered_json;

struct SuiteInfo {
  std::string name;
  std::uint32_t default_hi;
  std::uint32_t max_q;
  std::uint32_t heavy_max_q;
};

const std::vector<SuiteInfo>& suite_table() {
  static const std::vector<SuiteInfo> t = {
      {"dimension", 8, 8, 9},  {"weights", 9, 9, 9},  {"symplectic", 5, 5, 5},  {"duality", 3, 4, 4},
      {"klein", 3, 5, 5},      {"blocking", 4, 5, 5}, {"plane-codes", 3, 4, 4},
  };
  return t;
}

const SuiteInfo& info(const std::string& name) {
  for (const auto& s : suite_table())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

void expect(Check& c, ojson e, ojson v) {
  c.pass = e == v;
  c.expected = std::move(e);
  c.computed = std::move(v);
}

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  template <class Fn>
  void run(std::string id, std::string anchor, bool informational, Fn&& fn) {
    Check c;
    c.claim_id = std::move(id);
    c.anchor = std::move(anchor);
    c.informational = informational;
    try {
      fn(c);
    } catch (const BudgetError& e) {
      c.status = "skipped";
      c.informational = true;
      c.pass = false;
      c.computed = e.what();
    } catch (const std::exception& e) {
      c.status = "error";
      c.pass = false;
      c.computed = e.what();
    }
    r_.checks.push_back(std::move(c));
  }

  void skip(std::string id, std::string anchor, std::string reason) {
    Check c;
    c.claim_id = std::move(id);
    c.anchor = std::move(anchor);
    c.informational = true;
    c.status = "skipped";
    c.computed = std::move(reason);
    r_.checks.push_back(std::move(c));
  }

 private:
  SuiteReport& r_;
};

// shared state for one (suite, q) run
struct Env {
  std::uint32_t q;
  const SuiteOptions& opts;
  SuiteReport& report;
  FieldPtr field;
  ProjectiveSpacePtr pg3;

  Env(std::uint32_t q_, const SuiteOptions& o, SuiteReport& r)
      : q(q_), opts(o), report(r), field(make_field_of_order(q_)), pg3(std::make_shared<ProjectiveSpace>(field, 3)) {}

  LinearCode code(const ProjectiveSpacePtr& space, int j, int k) {
    bool hit = false;
    auto c = opts.cache->get(space, j, k, &hit);
    if (hit) ++report.cache_hits;
    return c;
  }
  LinearCode line_code() { return code(pg3, 1, 1); }
  std::uint64_t q64() const { return q; }
};

std::uint64_t line_weight(std::uint64_t q) { return q * q * q + 2 * q * q + q + 1; }
std::uint64_t symplectic_weight(std::uint64_t q) { return (q * q + 1) * (q + 1); }

template <class Set>
ojson sorted_list(const Set& s) {
  ojson a = ojson::array();
  for (const auto& x : s) a.push_back(x);
  return a;
}

std::vector<std::vector<std::uint8_t>> polarity_vectors(const ProjectiveSpace& pg3, const std::vector<Polarity>& pols) {
  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(pols.size());
  for (const auto& pol : pols) {
    const auto v = symplectic_vector(pg3, pol);
    out.emplace_back(v.entries().begin(), v.entries().end());
  }
  return out;
}

// ---------------------------------------------------------------- dimension

void dimension_suite(Env& env, Recorder& rec) {
  const auto code = env.line_code();
  rec.run("dimension.formula", "dim C_{1,1}(3,q) = q((2p^2+1)/3)^h + 1", false,
          [&](Check& c) { expect(c, dimension_formula(env.q), code.dimension()); });
  rec.run("dimension.generators", "every chi_l^(1) lies in the computed C_{1,1}(3,q)", false, [&](Check& c) {
    const auto& lines = env.pg3->subspaces(1);
    std::atomic<std::size_t> inside{0};
    parallel_for(lines.size(), env.opts.threads, [&](std::size_t l) {
      if (code.contains(char_vector_incidence(*env.pg3, lines.at(l), 1))) ++inside;
    });
    expect(c, lines.size(), inside.load());
  });
}

// ---------------------------------------------------------------- weights

void weights_suite(Env& env, Recorder& rec) {
  const auto q = env.q64();
  rec.run("weight.line", "wt(chi_l^(1)) = q^3 + 2q^2 + q + 1 for every line l", false, [&](Check& c) {
    const auto& lines = env.pg3->subspaces(1);
    std::set<std::size_t> seen;
    for (std::size_t l = 0; l < lines.size(); ++l) seen.insert(weight(char_vector_incidence(*env.pg3, lines.at(l), 1)));
    expect(c, ojson::array({line_weight(q)}), sorted_list(seen));
  });
  rec.run("weight.point", "wt(chi_P^(1)) = q^2 + q + 1 for every point P", false, [&](Check& c) {
    const auto& pts = env.pg3->subspaces(0);
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) seen.insert(weight(char_vector_incidence(*env.pg3, pts.at(i), 1)));
    expect(c, ojson::array({q * q + q + 1}), sorted_list(seen));
  });
  rec.run("weight.plane", "every line meets every plane of PG(3,q)", false, [&](Check& c) {
    const auto v = char_vector_incidence(*env.pg3, env.pg3->subspaces(2).at(0), 1);
    expect(c, env.pg3->count(1), weight(v));
  });
}

// ---------------------------------------------------------------- symplectic

void symplectic_suite(Env& env, Recorder& rec) {
  const auto q = env.q64();
  const bool even = env.field->p() == 2;
  const auto code = env.line_code();
  const auto pols = enumerate_symplectic_polarities(env.field);
  const auto vectors = polarity_vectors(*env.pg3, pols);

  rec.run("symplectic.polarities", "number of symplectic polarities of PG(3,q) is q^2(q^3-1)", false,
          [&](Check& c) { expect(c, q * q * (q * q * q - 1), pols.size()); });
  rec.run("symplectic.weight", "wt(chi_W) = q^3 + q^2 + q + 1 for every W(3,q)", false, [&](Check& c) {
    std::set<std::size_t> seen;
    for (const auto& v : vectors) seen.insert(static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto x) { return x; })));
    expect(c, ojson::array({symplectic_weight(q)}), sorted_list(seen));
  });
  rec.run("symplectic.distinct", "distinct polarities give distinct absolute-line sets", true, [&](Check& c) {
    std::set<std::vector<std::uint8_t>> s(vectors.begin(), vectors.end());
    expect(c, pols.size(), s.size());
  });
  rec.run("symplectic.membership", "chi_W lies in C(3,q) if and only if q is even", false, [&](Check& c) {
    std::atomic<std::size_t> inside{0};
    parallel_for(vectors.size(), env.opts.threads, [&](std::size_t i) {
      FpVector v(code.p(), code.length(), code.meta());
      std::copy(vectors[i].begin(), vectors[i].end(), v.mutable_entries().begin());
      if (code.contains(v)) ++inside;
    });
    expect(c, even ? pols.size() : 0, inside.load());
  });
  rec.run("symplectic.extended_dimension", "dim C(q) = dim C(3,q) for q even, larger for q odd", false, [&](Check& c) {
    const auto ext = extend_with_symplectic(code);
    c.computed = ext.dimension();
    if (even) {
      c.expected = code.dimension();
      c.pass = ext.dimension() == code.dimension();
    } else {
      c.expected = ojson{{"greaterThan", code.dimension()}};
      c.pass = ext.dimension() > code.dimension();
    }
  });

  const auto r = general_n_symplectic_check(1, env.q, env.opts.threads, &code);
  rec.run("regulus.congruence", "c(l) = m1 mod p on every line, c the sum of chi over a regulus", false,
          [&](Check& c) { expect(c, r.lines, r.congruence_holds); });
  rec.run("regulus.class_identity", "c(l) = m1 - q m2 with m2 the regulus lines through l", false,
          [&](Check& c) { expect(c, r.lines, r.class_identity_holds); });
  rec.run("regulus.all_generator_identity", "c(l) = m1 - q m2 with m2 over both reguli", true,
          [&](Check& c) { expect(c, r.lines, r.total_identity_holds); });
  if (even) {
    rec.run("regulus.singular_lines", "the regulus sum is the characteristic vector of the singular lines", false,
            [&](Check& c) { expect(c, true, r.sum_is_absolute); });
    rec.run("regulus.singular_count", "singular (totally isotropic) lines number q^3 + q^2 + q + 1", false,
            [&](Check& c) { expect(c, symplectic_weight(q), r.absolute_lines); });
    rec.run("regulus.lines_on_quadric", "lines contained in Q+(3,q)", true,
            [&](Check& c) { expect(c, 2 * (q + 1), r.lines_on_quadric); });
    rec.run("regulus.sum_in_code", "the regulus sum lies in C(3,q)", false,
            [&](Check& c) { expect(c, true, r.sum_in_code); });
  } else {
    const std::uint32_t p = env.field->p();
    rec.run("witness.orthogonal", "chi_{R+} - chi_{R-} lies in C(3,q)^perp", false,
            [&](Check& c) { expect(c, true, r.witness_orthogonal); });
    rec.run("witness.projection", "proj^(0)(chi_{R+} - chi_{R-}) = 0", false,
            [&](Check& c) { expect(c, true, r.witness_proj_zero); });
    rec.run("witness.absolute_counts", "W(3,q) has 2 lines in R+ and q+1 lines in R-", false,
            [&](Check& c) { expect(c, ojson::array({2, q + 1}), ojson::array({r.absolute_in_plus, r.absolute_in_minus})); });
    rec.run("witness.product", "chi_W . (chi_{R+} - chi_{R-}) = 2 - (q+1) != 0 mod p", false, [&](Check& c) {
      const std::uint32_t want = (2 + p - static_cast<std::uint32_t>((q + 1) % p)) % p;
      expect(c, want, r.witness_product);
      c.pass = c.pass && want != 0;
    });
    rec.run("witness.not_in_code", "chi_W is not in C(3,q) for q odd", false,
            [&](Check& c) { expect(c, false, r.symplectic_in_code); });
  }
}

// ---------------------------------------------------------------- duality

void duality_suite(Env& env, Recorder& rec) {
  constexpr std::size_t kSamples = 1000;
  const auto lines = env.line_code();
  const auto points = env.code(env.pg3, 0, 1);
  const auto r = duality_transfer_check(lines, points, kSamples, env.opts.seed);
  rec.run("duality.forward", "c in C_{1,1}(3,q)^perp implies proj^(0)(c) in C_{0,1}(3,q)^perp", false,
          [&](Check& c) { expect(c, r.forward_samples, r.forward_pass); });
  rec.run("duality.reverse", "c outside C_{1,1}(3,q)^perp implies proj^(0)(c) outside C_{0,1}(3,q)^perp", false,
          [&](Check& c) { expect(c, r.reverse_samples, r.reverse_pass); });
  rec.run("duality.line_vector", "both sides agree for c = chi_l^(1)", false, [&](Check& c) {
    const auto v = char_vector_incidence(*env.pg3, env.pg3->subspaces(1).at(0), 1);
    const bool left = lines.in_dual(v);
    const bool right = points.in_dual(proj_map(*env.pg3, v, 0));
    c.expected = "equal";
    c.computed = ojson::array({left, right});
    c.pass = left == right;
  });
}

// ---------------------------------------------------------------- klein

void klein_suite(Env& env, Recorder& rec) {
  const auto q = env.q64();
  KleinContext ctx(env.field);
  const auto& f = ctx.field();
  const auto& lines = ctx.pg3().subspaces(1);

  rec.run("klein.quadric_points", "Q+(5,q) has (q^2+1)(q^2+q+1) points", false,
          [&](Check& c) { expect(c, (q * q + 1) * (q * q + q + 1), ctx.quadric().points().size()); });
  rec.run("klein.bijection", "lines of PG(3,q) map bijectively onto the Klein quadric", false, [&](Check& c) {
    std::set<std::uint32_t> images;
    std::size_t good = 0;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      const auto pt = ctx.plucker(lines.at(l));
      images.insert(pt);
      good += ctx.quadric().contains(pt) && ctx.unplucker(pt) == lines.at(l);
    }
    expect(c, ojson::array({lines.size(), lines.size()}), ojson::array({images.size(), good}));
  });
  rec.run("klein.incidence", "two lines meet iff their images are collinear on the quadric", false, [&](Check& c) {
    const auto polar = ctx.quadric().form().polar();
    std::atomic<std::size_t> agree{0};
    parallel_for(lines.size(), env.opts.threads, [&](std::size_t a) {
      const auto la = lines.at(a);
      const auto pa = ctx.pg5().point_vector(ctx.plucker(a));
      std::size_t local = 0;
      for (std::size_t b = 0; b < lines.size(); ++b) {
        const auto pb = ctx.pg5().point_vector(ctx.plucker(b));
        local += incident(f, la, lines.at(b)) == (polar.eval(pa, pb) == 0);
      }
      agree += local;
    });
    expect(c, lines.size() * lines.size(), agree.load());
  });
  rec.run("klein.generator_classes", "Greek planes (planes of PG(3,q)) and Latin planes (points) are the two classes",
          false, [&](Check& c) {
            if (q > 4) throw BudgetError("plane enumeration of PG(5,q) limited to q <= 4");
            std::set<Subspace> greek, latin;
            const auto& planes = ctx.pg3().subspaces(2);
            for (std::size_t i = 0; i < planes.size(); ++i) greek.insert(ctx.greek_plane(planes.at(i)));
            for (std::uint32_t pt = 0; pt < ctx.pg3().count(0); ++pt) latin.insert(ctx.latin_plane(pt));
            const auto gens = generators(ctx.quadric());
            std::set<Subspace> a(gens.class_a.begin(), gens.class_a.end()), b(gens.class_b.begin(), gens.class_b.end());
            expect(c, true, (a == greek && b == latin) || (a == latin && b == greek));
          });

  const auto pols = enumerate_symplectic_polarities(env.field);
  const auto pol_vectors = polarity_vectors(ctx.pg3(), pols);
  const std::set<std::vector<std::uint8_t>> pol_set(pol_vectors.begin(), pol_vectors.end());
  const auto& hyps = ctx.pg5().subspaces(4);
  std::size_t tangent = 0, tangent_ok = 0, parabolic = 0, parabolic_ok = 0;
  std::set<std::vector<std::uint8_t>> parabolic_sets;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const Subspace h = hyps.at(i);
    const auto info = ctx.classify_section(h);
    const auto v = ctx.section_to_lineset(h);
    if (info.kind == SectionKind::Tangent) {
      ++tangent;
      const auto axis = ctx.unplucker(*info.vertex);
      tangent_ok += v == char_vector_incidence(ctx.pg3(), axis, 1);
    } else {
      ++parabolic;
      std::vector<std::uint8_t> e(v.entries().begin(), v.entries().end());
      parabolic_ok += pol_set.count(e);
      parabolic_sets.insert(std::move(e));
    }
  }
  rec.run("klein.tangent_sections", "a tangent hyperplane section is the support of chi_l^(1)", false,
          [&](Check& c) { expect(c, ojson::array({ctx.quadric().points().size(), tangent}), ojson::array({tangent, tangent_ok})); });
  rec.run("klein.parabolic_sections", "a parabolic hyperplane section is the line set of a W(3,q)", false,
          [&](Check& c) {
            expect(c, ojson::array({pols.size(), parabolic, pols.size()}),
                   ojson::array({parabolic, parabolic_ok, parabolic_sets.size()}));
          });
  rec.run("klein.quadric_lines", "lines on the Klein quadric are the point-plane pencils of PG(3,q)", false,
          [&](Check& c) {
            BlockingGeometry scan(ctx.quadric());
            const auto flags = BlockingGeometry::from_klein(ctx);
            bool same = scan.line_count() == flags.line_count();
            for (std::size_t l = 0; same && l < scan.line_count(); ++l) same = scan.line_points(l) == flags.line_points(l);
            expect(c, ojson::array({(q + 1) * (q * q + 1) * (q * q + q + 1), true}), ojson::array({scan.line_count(), same}));
          });

  // quadric combinatorics
  for (int n : {3, 4, 5}) {
    auto space = std::make_shared<ProjectiveSpace>(env.field, n);
    for (int eps : (n % 2 ? std::vector<int>{1, -1} : std::vector<int>{0})) {
      rec.run("quadric.points.n" + std::to_string(n) + (eps > 0 ? "+" : eps < 0 ? "-" : "0"),
              "|Q^eps(n,q)| = (q^n - 1)/(q - 1) + eps q^((n-1)/2)", false, [&](Check& c) {
                expect(c, quadric_point_count(n, eps, q), standard_quadric(space, eps).points().size());
              });
    }
  }
  for (int n : {3, 5}) {
    rec.run("quadric.generators.n" + std::to_string(n), "generators of Q+(n,q): two classes of equal size", false,
            [&](Check& c) {
              if (n == 5 && q > 4) throw BudgetError("plane enumeration of PG(5,q) limited to q <= 4");
              auto space = std::make_shared<ProjectiveSpace>(env.field, n);
              const auto gens = generators(standard_quadric(space, 1));
              // prod_{i=0}^{(n-1)/2} (q^i + 1)
              std::uint64_t total = 1, qi = 1;
              for (int i = 0; i <= (n - 1) / 2; ++i, qi *= q) total *= qi + 1;
              expect(c, ojson::array({total / 2, total / 2}), ojson::array({gens.class_a.size(), gens.class_b.size()}));
            });
  }
}

// ---------------------------------------------------------------- blocking

void blocking_suite(Env& env, Recorder& rec) {
  const auto q = env.q64();
  KleinContext ctx(env.field);
  const auto geom = BlockingGeometry::from_klein(ctx);
  const auto cb = canonical_blockers(ctx);

  rec.run("blocking.parabolic_size", "parabolic section: (q^4 - 1)/(q - 1) points", false,
          [&](Check& c) { expect(c, q * q * q + q * q + q + 1, cb.parabolic.size()); });
  rec.run("blocking.tangent_size", "tangent section minus vertex: (q^4 - 1)/(q - 1) + q^2 - 1 points", false,
          [&](Check& c) { expect(c, q * q * q + 2 * q * q + q, cb.tangent_minus_vertex.size()); });
  rec.run("blocking.parabolic_minimal", "a parabolic section is a minimal blocking set", false, [&](Check& c) {
    const bool b = is_blocking(geom, cb.parabolic);
    expect(c, ojson::array({true, true}), ojson::array({b, b && is_minimal(geom, cb.parabolic)}));
  });
  rec.run("blocking.tangent_minimal", "a tangent section minus its vertex is a minimal blocking set", false,
          [&](Check& c) {
            const bool b = is_blocking(geom, cb.tangent_minus_vertex);
            expect(c, ojson::array({true, true}), ojson::array({b, b && is_minimal(geom, cb.tangent_minus_vertex)}));
          });
  rec.run("blocking.vertex_removal", "minimalizing a full tangent section removes exactly the vertex", false,
          [&](Check& c) {
            auto full = cb.tangent_minus_vertex;
            full.push_back(cb.vertex);
            full = geom.make_point_set(full);
            const auto m = minimalize(geom, full);
            std::vector<std::uint32_t> gone;
            std::set_difference(full.begin(), full.end(), m.begin(), m.end(), std::back_inserter(gone));
            expect(c, ojson::array({cb.vertex}), sorted_list(gone));
          });
  rec.run("blocking.parabolic_hyperplane", "the parabolic blocker spans its defining hyperplane", false,
          [&](Check& c) {
            const auto cont = hyperplane_containment(ctx.pg5(), cb.parabolic);
            expect(c, true, cont.contained && cont.witness == cb.parabolic_hyperplane);
          });
  rec.run("blocking.parabolic_lineset", "the parabolic blocker is the line set of a W(3,q)", false, [&](Check& c) {
    const Polarity pol(ctx.section_form(cb.parabolic_hyperplane));
    expect(c, true, ctx.section_to_lineset(cb.parabolic_hyperplane) == symplectic_vector(ctx.pg3(), pol));
  });
  rec.run("blocking.tangent_lineset", "the tangent blocker is chi_l^(1) without l", false, [&](Check& c) {
    const auto axis = ctx.unplucker(cb.vertex);
    auto want = char_vector_incidence(ctx.pg3(), axis, 1);
    want.set(ctx.pg3().subspaces(1).index_of(axis), 0);
    FpVector got(want.p(), want.size(), want.meta());
    for (auto pt : cb.tangent_minus_vertex) got.set(ctx.unplucker_index(pt), 1);
    expect(c, true, got == want);
  });

  const bool asserted = q >= 4;
  const auto probe = probe_theorem(ctx, geom, 200, env.opts.seed, env.opts.threads);
  rec.run("blocking.probe", "minimal blocking sets of size <= q^3 + 2q^2 + q + 1 lie in a hyperplane (q >= 4)",
          !asserted, [&](Check& c) {
            c.expected = ojson{{"counterexamples", 0}};
            c.computed = ojson{{"trials", probe.trials.size()},
                               {"inRange", probe.in_range},
                               {"counterexamples", probe.counterexamples},
                               {"smallest", probe.smallest}};
            c.pass = probe.counterexamples == 0 && probe.trials.size() == 200;
          });
  rec.run("blocking.minimalize_all", "a minimalization of the whole quadric", true, [&](Check& c) {
    const auto m = minimalize(geom, ctx.quadric().points());
    c.expected = ojson{{"atLeast", q * q * q + q * q + q + 1}};
    c.computed = ojson{{"size", m.size()}, {"contained", hyperplane_containment(ctx.pg5(), m).contained}};
    c.pass = m.size() >= q * q * q + q * q + q + 1;
  });
  rec.run("cover.bound", "s lines of PG(2,q) cover at least (q+1)^2 s / (q+s) points", false, [&](Check& c) {
    const auto r = line_cover_bound_check(env.q, 3, 10000, env.opts.seed);
    c.expected = ojson{{"violations", 0}};
    c.computed = ojson{{"exhaustive", r.exhaustive_sets},
                       {"random", r.random_sets},
                       {"violations", r.violations},
                       {"equality", r.equality_cases}};
    c.pass = r.passed();
  });
}

// ---------------------------------------------------------------- plane codes

void plane_codes_suite(Env& env, Recorder& rec) {
  constexpr std::size_t kSamples = 1000;
  const auto q = env.q64();
  const auto base = env.line_code();
  const auto ext = extend_with_symplectic(base);
  LocalCodes local(env.pg3);
  const auto& planes = env.pg3->subspaces(2);
  const auto& lines = env.pg3->subspaces(1);
  const auto& f = env.pg3->field();

  rec.run("plane.restriction", "c in C(q) restricts into C_{1,0}(2,q) on every plane and every point", false,
          [&](Check& c) {
            std::atomic<std::size_t> good{0};
            parallel_for(kSamples, env.opts.threads, [&](std::size_t t) {
              const auto v = random_codeword(ext, env.opts.seed, t);
              bool ok = true;
              for (std::size_t pl = 0; ok && pl < planes.size(); ++pl)
                ok = local.lines_code().contains(local.restrict_to_plane(v, pl));
              for (std::uint32_t pt = 0; ok && pt < env.pg3->count(0); ++pt)
                ok = local.points_code().contains(local.restrict_to_point(v, pt));
              good += ok;
            });
            expect(c, kSamples, good.load());
          });

  // pick a line in plane 0 and a line meeting plane 0 in one point
  const Subspace pi = planes.at(0);
  std::size_t inside = lines.size(), across = lines.size();
  for (std::size_t l = 0; l < lines.size() && (inside == lines.size() || across == lines.size()); ++l) {
    if (contains(f, pi, lines.at(l)))
      inside = std::min(inside, l);
    else
      across = std::min(across, l);
  }
  auto pencil = [&](const Subspace& point) {
    ojson v = ojson::array();
    for (auto l : local.plane_lines(0)) v.push_back(contains(f, lines.at(l), point) ? 1 : 0);
    return v;
  };
  auto as_json = [](const FpVector& v) {
    ojson a = ojson::array();
    for (auto x : v.entries()) a.push_back(x);
    return a;
  };
  rec.run("plane.line_in_plane", "chi_l^(1) with l in the plane restricts to the all-one vector", false,
          [&](Check& c) {
            const auto r = local.restrict_to_plane(char_vector_incidence(*env.pg3, lines.at(inside), 1), 0);
            expect(c, ojson(std::vector<int>(r.size(), 1)), as_json(r));
          });
  rec.run("plane.line_meets_plane", "chi_l^(1) with l meeting the plane in P restricts to the pencil of P", false,
          [&](Check& c) {
            const auto r = local.restrict_to_plane(char_vector_incidence(*env.pg3, lines.at(across), 1), 0);
            expect(c, pencil(meet(f, pi, lines.at(across))), as_json(r));
          });
  rec.run("plane.symplectic", "chi_W restricts to the pencil of the pole of the plane", false, [&](Check& c) {
    const Polarity pol(symplectic_form(3, env.field));
    const auto r = local.restrict_to_plane(symplectic_vector(*env.pg3, pol), 0);
    expect(c, pencil(pol.perp(pi)), as_json(r));
  });

  LineFamilies fam(*env.pg3);
  rec.run("audit.constant", "c . chi_S is the same for every S in the four line families, c in C(q)", false,
          [&](Check& c) {
            std::atomic<std::size_t> good{0};
            parallel_for(kSamples, env.opts.threads, [&](std::size_t t) {
              good += inner_product_audit(fam, random_codeword(ext, env.opts.seed + 1, t)).constant;
            });
            expect(c, kSamples, good.load());
          });
  rec.run("audit.line", "chi_l^(1) . chi_S = 1 for every S", false, [&](Check& c) {
    const auto a = inner_product_audit(fam, char_vector_incidence(*env.pg3, lines.at(0), 1));
    expect(c, ojson::array({true, 1}), ojson::array({a.constant, a.alpha}));
  });

  // small weight words of C_{0,1}(2,q); the characterization needs q >= 19
  rec.run("plane.small_weight", "small weight words of C_{0,1}(2,q) are combinations of at most two lines", true,
          [&](Check& c) {
            const auto& code = local.points_code();
            const auto dist = weight_distribution(code);
            const std::uint32_t p = env.field->p();
            const std::size_t bound = (env.field->h() == 1) ? 3 * q - 3 : (3 * q > 12 ? 3 * q - 12 : 0);
            std::size_t words = 0, min_weight = 0;
            for (auto [w, n] : dist) {
              if (w > 0 && min_weight == 0) min_weight = w;
              if (w > 0 && w < bound) words += n;
            }
            const auto& pl = local.plane_space().incidence(1).points_on;
            const std::size_t npts = local.plane_space().count(0);
            std::set<std::vector<std::uint8_t>> combos;
            for (std::size_t a = 0; a < pl.size(); ++a)
              for (std::size_t b = a; b < pl.size(); ++b)
                for (std::uint32_t x = 1; x < p; ++x)
                  for (std::uint32_t y = (a == b ? 0 : 1); y < p; ++y) {
                    std::vector<std::uint8_t> v(npts, 0);
                    for (auto pt : pl[a]) v[pt] = static_cast<std::uint8_t>((v[pt] + x) % p);
                    if (a != b)
                      for (auto pt : pl[b]) v[pt] = static_cast<std::uint8_t>((v[pt] + y) % p);
                    const auto w = static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto e) { return e; }));
                    if (w > 0 && w < bound) combos.insert(std::move(v));
                  }
            c.expected = ojson{{"wordsBelow", combos.size()}, {"minWeight", q + 1}};
            c.computed = ojson{{"wordsBelow", words}, {"minWeight", min_weight}, {"bound", bound}, {"dimension", code.dimension()}};
            c.pass = words == combos.size() && min_weight == q + 1;
          });
}

using SuiteFn = void (*)(Env&, Recorder&);

SuiteFn suite_fn(const std::string& name) {
  static const std::map<std::string, SuiteFn> fns = {
      {"dimension", dimension_suite}, {"weights", weights_suite}, {"symplectic", symplectic_suite},
      {"duality", duality_suite},     {"klein", klein_suite},     {"blocking", blocking_suite},
      {"plane-codes", plane_codes_suite},
  };
  return fns.at(name);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : suite_table()) v.push_back(s.name);
    return v;
  }();
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::pair<std::uint32_t, std::uint32_t> default_q_range(const std::string& suite) {
  return {2, info(suite).default_hi};
}

SuiteReport run_suite(const std::string& name, std::uint32_t q, const SuiteOptions& opts) {
  const SuiteInfo& si = info(name);
  if (!is_prime_power(q)) throw std::invalid_argument("q must be a prime power");
  if (!opts.cache) throw std::invalid_argument("suite needs a code cache");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = name;
  rep.q = q;
  rep.seed = opts.seed;
  Recorder rec(rep);
  const std::uint32_t limit = opts.heavy ? si.heavy_max_q : si.max_q;
  if (q > limit) {
    rec.skip(name + ".budget", "q within the suite's budget",
             "q = " + std::to_string(q) + " exceeds " + std::to_string(limit) +
                 (si.heavy_max_q > si.max_q && !opts.heavy ? " (use --heavy)" : ""));
  } else {
    try {
      Env env(q, opts, rep);
      suite_fn(name)(env, rec);
    } catch (const BudgetError& e) {
      rec.skip(name + ".budget", "q within the suite's budget", e.what());
    } catch (const std::exception& e) {
      Check c;
      c.claim_id = name + ".setup";
      c.anchor = "suite setup";
      c.status = "error";
      c.computed = e.what();
      rep.checks.push_back(std::move(c));
    }
  }
  rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.informational || c.pass; });
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<SuiteReport> run_suites(const std::string& name,
                                    std::optional<std::pair<std::uint32_t, std::uint32_t>> range,
                                    const SuiteOptions& opts) {
  std::vector<std::string> names;
  if (name == "all")
    names = suite_names();
  else if (is_suite_name(name))
    names = {name};
  else
    throw std::invalid_argument("unknown suite: " + name);

  // (suite, q) in output order; the same q never runs twice at once, so
  // cache hit counts stay reproducible
  std::vector<std::pair<std::string, std::uint32_t>> tasks;
  std::set<std::uint32_t> qs;
  for (const auto& n : names) {
    const auto [lo, hi] = range ? *range : default_q_range(n);
    for (std::uint32_t q = lo; q <= hi; ++q)
      if (is_prime_power(q)) {
        tasks.emplace_back(n, q);
        qs.insert(q);
      }
  }
  const std::vector<std::uint32_t> qlist(qs.begin(), qs.end());
  std::vector<SuiteReport> out(tasks.size());
  const unsigned outer = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(qlist.size())));
  SuiteOptions inner = opts;
  inner.threads = std::max(1u, opts.threads / outer);
  parallel_for(qlist.size(), outer, [&](std::size_t i) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      if (tasks[t].second == qlist[i]) out[t] = run_suite(tasks[t].first, tasks[t].second, inner);
  });
  return out;
}

bool all_pass(const std::vector<SuiteReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.pass; });
}

ojson report_to_json(const SuiteReport& r) {
  ojson j;
  j["schemaVersion"] = kSchemaVersion;
  j["suite"] = r.suite;
  j["q"] = r.q;
  j["seed"] = r.seed;
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    ojson cj;
    cj["claimId"] = c.claim_id;
    cj["anchor"] = c.anchor;
    cj["expected"] = c.expected;
    cj["computed"] = c.computed;
    cj["pass"] = c.pass;
    cj["informational"] = c.informational;
    cj["status"] = c.status;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["pass"] = r.pass;
  j["cacheHits"] = r.cache_hits;
  j["runtimeMs"] = r.runtime_ms;
  return j;
}

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<SuiteReport>& reports) {
  std::ostringstream s;
  s << "suite,q,seed,claimId,anchor,expected,computed,pass,informational,status\n";
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      s << r.suite << ',' << r.q << ',' << r.seed << ',' << csv_field(c.claim_id) << ',' << csv_field(c.anchor) << ','
        << csv_field(c.expected.dump()) << ',' << csv_field(c.computed.dump()) << ',' << (c.pass ? "true" : "false")
        << ',' << (c.informational ? "true" : "false") << ',' << c.status << '\n';
  return s.str();
}

}  // namespace galois
