// galois: command-line front end for the verification suites and the
// individual computations behind them.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "galois/blocking.hpp"
#include "galois/cache.hpp"
#include "galois/codes.hpp"
#include "galois/klein.hpp"
#include "galois/suites.hpp"

using namespace galois;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string q = "";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string cache_dir;
  unsigned threads = 0;
  bool heavy = false;
};

std::optional<std::pair<std::uint32_t, std::uint32_t>> parse_range(const std::string& s) {
  if (s.empty()) return std::nullopt;
  static const std::regex re(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--q", "expected Q or A..B, got " + s);
  const auto lo = static_cast<std::uint32_t>(std::stoul(m[1]));
  const auto hi = m[2].matched ? static_cast<std::uint32_t>(std::stoul(m[2])) : lo;
  if (lo < 2 || hi < lo) throw CLI::ValidationError("--q", "empty range " + s);
  return std::make_pair(lo, hi);
}

std::uint32_t single_q(const Globals& g) {
  const auto r = parse_range(g.q);
  if (!r || r->first != r->second) throw CLI::ValidationError("--q", "this command takes a single q");
  if (!is_prime_power(r->first)) throw CLI::ValidationError("--q", "q must be a prime power");
  return r->first;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
  if (!f) throw std::runtime_error("short write to " + g.out);
}

void emit_json(const Globals& g, const ojson& j) { emit(g, j.dump(2) + "\n"); }

std::filesystem::path cache_dir(const Globals& g) { return g.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g.cache_dir); }

unsigned threads(const Globals& g) {
  return g.threads ? g.threads : std::max(1u, std::thread::hardware_concurrency());
}

int emit_reports(const Globals& g, const std::vector<SuiteReport>& reports) {
  if (g.format == "csv")
    emit(g, reports_to_csv(reports));
  else
    emit(g, reports_to_json(reports));
  return all_pass(reports) ? 0 : 1;
}

int run_named_suite(const Globals& g, const std::string& name, bool single) {
  CodeCache cache(cache_dir(g), threads(g));
  SuiteOptions opts{g.seed, threads(g), g.heavy, &cache};
  std::optional<std::pair<std::uint32_t, std::uint32_t>> range;
  if (single) {
    const auto q = single_q(g);
    range = std::make_pair(q, q);
  } else {
    range = parse_range(g.q);
  }
  return emit_reports(g, run_suites(name, range, opts));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Codes of lines in PG(3,q), the Klein quadric and its blocking sets"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--q", g.q, "q or a range A..B");
  app.add_option("--seed", g.seed, "sampling seed")->capture_default_str();
  app.add_option("--out", g.out, "write output to a file instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "basis cache directory (default $GALOIS_CACHE_DIR or ./.cache)");
  app.add_option("--threads", g.threads, "worker threads (default: hardware parallelism)");
  app.add_flag("--heavy", g.heavy, "allow the expensive q = 9 dimension run");

  int status = 0;

  auto* field = app.add_subcommand("field", "field tables: modulus and generator");
  field->callback([&] {
    const auto f = make_field_of_order(single_q(g));
    emit_json(g, ojson{{"q", f->q()}, {"p", f->p()}, {"h", f->h()}, {"modulus", f->modulus()}, {"generator", f->generator()}});
  });

  int en_n = 3, en_k = 1;
  bool en_list = false;
  auto* enumerate = app.add_subcommand("enumerate", "k-spaces of PG(n,q)");
  enumerate->add_option("--n", en_n)->capture_default_str();
  enumerate->add_option("--k", en_k)->capture_default_str();
  enumerate->add_flag("--list", en_list, "print every subspace as its RREF rows");
  enumerate->callback([&] {
    ProjectiveSpace pg(make_field_of_order(single_q(g)), en_n);
    const auto& list = pg.subspaces(en_k);
    ojson j{{"n", en_n}, {"q", pg.q()}, {"k", en_k}, {"count", list.size()}, {"gaussian", gaussian_count(en_n, en_k, pg.q())}};
    if (en_list) {
      ojson all = ojson::array();
      for (std::size_t i = 0; i < list.size(); ++i) all.push_back(list.at(i).entries());
      j["subspaces"] = std::move(all);
    }
    emit_json(g, j);
  });

  int qd_n = 5, qd_eps = 1;
  auto* quadric = app.add_subcommand("quadric", "standard quadric Q^eps(n,q)");
  quadric->add_option("--n", qd_n)->capture_default_str();
  quadric->add_option("--eps", qd_eps, "-1, 0 or 1")->capture_default_str();
  quadric->callback([&] {
    auto space = std::make_shared<ProjectiveSpace>(make_field_of_order(single_q(g)), qd_n);
    const auto Q = standard_quadric(space, qd_eps);
    ojson j{{"n", qd_n},
            {"q", space->q()},
            {"eps", qd_eps},
            {"points", Q.points().size()},
            {"expected", quadric_point_count(qd_n, qd_eps, space->q())},
            {"lines", lines_on_quadric(Q).size()}};
    emit_json(g, j);
  });

  bool kl_check = false;
  auto* klein = app.add_subcommand("klein", "Klein correspondence");
  klein->add_flag("--check", kl_check, "run the Klein dictionary checks");
  klein->callback([&] {
    if (kl_check) {
      status = run_named_suite(g, "klein", false);
      return;
    }
    KleinContext ctx(make_field_of_order(single_q(g)));
    ojson lines = ojson::array();
    const auto& ls = ctx.pg3().subspaces(1);
    for (std::size_t l = 0; l < ls.size(); ++l)
      lines.push_back(ojson{{"line", ls.at(l).entries()}, {"plucker", ctx.pg5().point_vector(ctx.plucker(l))}});
    emit_json(g, ojson{{"q", ctx.q()}, {"lines", std::move(lines)}});
  });

  int dm_n = 3, dm_j = 1, dm_k = 1;
  auto* dimension = app.add_subcommand("dimension", "dimension of C_{j,k}(n,q)");
  dimension->add_option("--n", dm_n)->capture_default_str();
  dimension->add_option("--j", dm_j)->capture_default_str();
  dimension->add_option("--k", dm_k)->capture_default_str();
  dimension->callback([&] {
    const auto q = single_q(g);
    CodeCache cache(cache_dir(g), threads(g));
    auto space = std::make_shared<ProjectiveSpace>(make_field_of_order(q), dm_n);
    bool hit = false;
    const auto code = cache.get(space, dm_j, dm_k, &hit);
    ojson j{{"n", dm_n}, {"q", q}, {"j", dm_j}, {"k", dm_k}, {"length", code.length()}, {"dimension", code.dimension()}};
    if (dm_n == 3 && dm_j == 1 && dm_k == 1) {
      j["formula"] = dimension_formula(q);
      if (dimension_formula(q) != code.dimension()) status = 1;
    }
    j["cacheHit"] = hit;
    emit_json(g, j);
  });

  auto* weights = app.add_subcommand("weights", "weights of the line and point vectors");
  weights->callback([&] { status = run_named_suite(g, "weights", true); });
  auto* symplectic = app.add_subcommand("symplectic", "symplectic line sets and the parity dichotomy");
  symplectic->callback([&] { status = run_named_suite(g, "symplectic", true); });

  int dr_n = 1;
  auto* dual = app.add_subcommand("dual-regulus", "regulus sums, the counting identity and the dual witness");
  dual->add_option("--n", dr_n, "ambient PG(2n+1,q)")->capture_default_str();
  dual->callback([&] {
    const auto r = general_n_symplectic_check(dr_n, single_q(g), threads(g));
    ojson j{{"n", r.n}, {"q", r.q}, {"codeDimension", r.code_dim}, {"lines", r.lines},
            {"congruenceHolds", r.congruence_holds}, {"classIdentityHolds", r.class_identity_holds},
            {"allGeneratorIdentityHolds", r.total_identity_holds}};
    if (r.q % 2 == 0) {
      j["sumIsSingularLines"] = r.sum_is_absolute;
      j["sumInCode"] = r.sum_in_code;
      j["singularLines"] = r.absolute_lines;
      j["linesOnQuadric"] = r.lines_on_quadric;
    } else {
      j["witnessOrthogonal"] = r.witness_orthogonal;
      j["witnessProjectionZero"] = r.witness_proj_zero;
      j["witnessProduct"] = r.witness_product;
      j["absoluteInPlus"] = r.absolute_in_plus;
      j["absoluteInMinus"] = r.absolute_in_minus;
      j["symplecticInCode"] = r.symplectic_in_code;
    }
    j["pass"] = r.passed;
    status = r.passed ? 0 : 1;
    emit_json(g, j);
  });

  auto* wdist = app.add_subcommand("wdist", "full weight distribution of C(3,q)");
  wdist->callback([&] {
    const auto q = single_q(g);
    CodeCache cache(cache_dir(g), threads(g));
    const auto code = cache.get(std::make_shared<ProjectiveSpace>(make_field_of_order(q), 3), 1, 1);
    const auto dist = weight_distribution(code);
    ojson d = ojson::object();
    std::uint64_t total = 0, min_weight = 0;
    for (auto [w, n] : dist) {
      d[std::to_string(w)] = n;
      total += n;
      if (w > 0 && min_weight == 0) min_weight = w;
    }
    emit_json(g, ojson{{"q", q}, {"dimension", code.dimension()}, {"words", total}, {"minWeight", min_weight}, {"distribution", d}});
  });

  auto* blocking = app.add_subcommand("blocking", "blocking sets of Q+(5,q)");
  blocking->require_subcommand(1);
  auto* bl_canon = blocking->add_subcommand("canonical", "the two hyperplane-section blocking sets");
  bl_canon->callback([&] {
    KleinContext ctx(make_field_of_order(single_q(g)));
    const auto geom = BlockingGeometry::from_klein(ctx);
    const auto cb = canonical_blockers(ctx);
    auto describe = [&](const std::vector<std::uint32_t>& s) {
      const bool b = is_blocking(geom, s);
      return ojson{{"size", s.size()}, {"blocking", b}, {"minimal", b && is_minimal(geom, s)},
                   {"file", ojson::parse(point_set_to_json(ctx.quadric(), s))}};
    };
    emit_json(g, ojson{{"q", ctx.q()},
                       {"parabolic", describe(cb.parabolic)},
                       {"tangentMinusVertex", describe(cb.tangent_minus_vertex)},
                       {"vertex", cb.vertex}});
  });
  std::string bl_file;
  auto* bl_verify = blocking->add_subcommand("verify", "check a point set file");
  bl_verify->add_option("--file", bl_file, "point set JSON")->required();
  bl_verify->callback([&] {
    KleinContext ctx(make_field_of_order(single_q(g)));
    const auto geom = BlockingGeometry::from_klein(ctx);
    std::ifstream f(bl_file);
    if (!f) throw std::runtime_error("cannot read " + bl_file);
    std::stringstream text;
    text << f.rdbuf();
    const auto pts = geom.make_point_set(point_set_from_json(ctx.quadric(), text.str()));
    const bool b = is_blocking(geom, pts);
    const auto cont = hyperplane_containment(ctx.pg5(), pts);
    ojson j{{"q", ctx.q()}, {"size", pts.size()}, {"blocking", b}, {"minimal", b && is_minimal(geom, pts)},
            {"inHyperplane", cont.contained}, {"rank", cont.rank}};
    if (b) j["minimalized"] = minimalize(geom, pts).size();
    emit_json(g, j);
  });
  std::size_t bl_trials = 200;
  auto* bl_probe = blocking->add_subcommand("probe", "random minimal blocking sets against the hyperplane bound");
  bl_probe->add_option("--trials", bl_trials)->capture_default_str();
  bl_probe->callback([&] {
    KleinContext ctx(make_field_of_order(single_q(g)));
    const auto geom = BlockingGeometry::from_klein(ctx);
    const auto r = probe_theorem(ctx, geom, bl_trials, g.seed, threads(g));
    ojson trials = ojson::array();
    for (const auto& t : r.trials)
      trials.push_back(ojson{{"index", t.index}, {"strategy", t.strategy}, {"superset", t.superset_size},
                             {"size", t.size}, {"minimal", t.minimal}, {"inRange", t.in_range}, {"contained", t.contained}});
    status = r.passed() ? 0 : 1;
    emit_json(g, ojson{{"q", r.q}, {"seed", r.seed}, {"asserted", r.asserted}, {"inRange", r.in_range},
                       {"counterexamples", r.counterexamples}, {"smallest", r.smallest}, {"pass", r.passed()},
                       {"trials", std::move(trials)}});
  });
  std::size_t cv_trials = 10000, cv_max = 3;
  auto* bl_cover = blocking->add_subcommand("cover", "points covered by sets of lines of PG(2,q)");
  bl_cover->add_option("--trials", cv_trials, "random line sets")->capture_default_str();
  bl_cover->add_option("--exhaustive", cv_max, "all sets up to this size")->capture_default_str();
  bl_cover->callback([&] {
    const auto r = line_cover_bound_check(single_q(g), cv_max, cv_trials, g.seed);
    status = r.passed() ? 0 : 1;
    emit_json(g, ojson{{"q", r.q}, {"exhaustive", r.exhaustive_sets}, {"random", r.random_sets},
                       {"violations", r.violations}, {"equality", r.equality_cases}, {"pass", r.passed()}});
  });

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "run a named verification suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  suite->add_option("name", suite_name, "suite")->required()->check(CLI::IsMember(choices));
  suite->callback([&] { status = run_named_suite(g, suite_name, false); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
