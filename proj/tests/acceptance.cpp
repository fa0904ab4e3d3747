// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "galois/blocking.hpp"
#include "galois/codes.hpp"
#include "galois/forms.hpp"
#include "galois/klein.hpp"
#include "galois/suites.hpp"

using namespace galois;

namespace {

constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, const std::string& what, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s [%s] (%.2fs)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
}

CodeCache mem_cache("");  // memory only

SuiteOptions opts() {
  SuiteOptions o;
  o.seed = kSeed;
  o.threads = 1;
  o.cache = &mem_cache;
  return o;
}

// checks of a suite report whose id starts with one of the prefixes; all
// must be present, asserted and passing
bool suite_checks(const std::string& suite, std::uint32_t q, const std::vector<std::string>& prefixes,
                  std::string& detail) {
  const auto r = run_suite(suite, q, opts());
  std::size_t seen = 0;
  bool ok = true;
  for (const auto& c : r.checks) {
    bool match = false;
    for (const auto& p : prefixes) match = match || c.claim_id.rfind(p, 0) == 0;
    if (!match || c.informational) continue;
    ++seen;
    if (!c.pass) {
      ok = false;
      detail += " q=" + std::to_string(q) + " " + c.claim_id + " failed";
    }
  }
  if (seen < prefixes.size()) {
    ok = false;
    detail += " q=" + std::to_string(q) + " missing checks";
  }
  return ok;
}

}  // namespace

int main() {
  report(1, "rank of C(3,q) equals q((2p^2+1)/3)^h + 1", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u}) {
      auto space = std::make_shared<ProjectiveSpace>(make_field_of_order(q), 3);
      const auto dim = build_code(space, 1, 1).dimension();
      d += " q=" + std::to_string(q) + ":" + std::to_string(dim);
      ok = ok && dim == dimension_formula(q);
    }
    return ok;
  });

  report(2, "every line vector has weight q^3+2q^2+q+1", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) ok = suite_checks("weights", q, {"weight.line"}, d) && ok;
    if (ok) d = "q=2..9";
    return ok;
  });

  report(3, "symplectic vectors have weight q^3+q^2+q+1 and lie in C(3,q) iff q even", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 4u, 5u})
      ok = suite_checks("symplectic", q, {"symplectic.polarities", "symplectic.weight", "symplectic.membership"}, d) &&
           ok;
    if (ok) d = "q=2..5, all polarities";
    return ok;
  });

  report(4, "regulus sum equals the singular lines of Q+(3,q), q even", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 4u}) {
      const auto r = general_n_symplectic_check(1, q);
      d += " q=" + std::to_string(q) + ":" + (r.sum_is_absolute ? "equal" : "differ");
      ok = ok && r.sum_is_absolute;
    }
    return ok;
  });

  report(5, "chi_R+ - chi_R- is a dual witness, q odd", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {3u, 5u}) {
      const auto r = general_n_symplectic_check(1, q);
      const std::uint32_t p = q == 3 ? 3 : 5;
      // R+ holds 2 absolute lines, R- all q+1: product 2 - (q+1) = 1 mod p
      const std::uint32_t want = (2 + p - (q + 1) % p) % p;
      const bool good = r.witness_orthogonal && r.absolute_in_plus == 2 && r.absolute_in_minus == q + 1 &&
                        r.witness_product == want && want != 0 && !r.symplectic_in_code;
      d += " q=" + std::to_string(q) + ": product " + std::to_string(r.witness_product) + " counts " +
           std::to_string(r.absolute_in_plus) + "/" + std::to_string(r.absolute_in_minus);
      ok = ok && good;
    }
    return ok;
  });

  report(6, "duality transfer, 1000 samples each way", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u}) {
      auto space = std::make_shared<ProjectiveSpace>(make_field_of_order(q), 3);
      const auto r = duality_transfer_check(build_code(space, 1, 1), build_code(space, 0, 1), 1000, kSeed);
      d += " q=" + std::to_string(q) + ": " + std::to_string(r.forward_pass) + "+" + std::to_string(r.reverse_pass);
      ok = ok && r.forward_samples == 1000 && r.reverse_samples == 1000 && r.passed();
    }
    return ok;
  });

  report(7, "Klein dictionary", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u})
      ok = suite_checks("klein", q,
                        {"klein.bijection", "klein.incidence", "klein.generator_classes", "klein.tangent_sections",
                         "klein.parabolic_sections"},
                        d) &&
           ok;
    if (ok) d = "q=2,3";
    return ok;
  });

  report(8, "quadric point counts and generator classes", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 4u})
      ok = suite_checks("klein", q, {"quadric.points", "quadric.generators.n3", "quadric.generators.n5"}, d) && ok;
    if (ok) d = "n=3,4,5 at q=2,3,4";
    return ok;
  });

  report(9, "canonical blocking sets are minimal with the stated sizes", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 4u}) {
      KleinContext ctx(make_field_of_order(q));
      const auto geom = BlockingGeometry::from_klein(ctx);
      const auto cb = canonical_blockers(ctx);
      const std::size_t base = q * q * q + q * q + q + 1;
      bool good = cb.parabolic.size() == base && cb.tangent_minus_vertex.size() == base + q * q - 1;
      good = good && is_blocking(geom, cb.parabolic) && is_minimal(geom, cb.parabolic);
      good = good && is_blocking(geom, cb.tangent_minus_vertex) && is_minimal(geom, cb.tangent_minus_vertex);
      auto full = cb.tangent_minus_vertex;
      full.push_back(cb.vertex);
      full = geom.make_point_set(full);
      const auto m = minimalize(geom, full);
      good = good && m == geom.make_point_set(cb.tangent_minus_vertex);
      d += " q=" + std::to_string(q) + ":" + std::to_string(cb.parabolic.size()) + "/" +
           std::to_string(cb.tangent_minus_vertex.size());
      ok = ok && good;
    }
    return ok;
  });

  report(10, "probe at q=4: small minimal blocking sets lie in a hyperplane", [](std::string& d) {
    KleinContext ctx(make_field_of_order(4));
    const auto geom = BlockingGeometry::from_klein(ctx);
    const auto r = probe_theorem(ctx, geom, 200, kSeed);
    d = std::to_string(r.trials.size()) + " trials, " + std::to_string(r.in_range) + " in range, " +
        std::to_string(r.counterexamples) + " counterexamples, smallest " + std::to_string(r.smallest);
    return r.trials.size() >= 200 && r.asserted && r.counterexamples == 0;
  });

  report(11, "weight census of C(3,2)", [](std::string& d) {
    auto space = std::make_shared<ProjectiveSpace>(make_field_of_order(2), 3);
    const auto code = build_code(space, 1, 1);
    const auto dist = weight_distribution(code);
    std::uint64_t total = 0;
    std::size_t min_weight = 0;
    for (auto [w, n] : dist) {
      total += n;
      if (w && !min_weight) min_weight = w;
    }
    std::size_t lines_ok = 0;
    const auto& lines = space->subspaces(1);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto v = char_vector_incidence(*space, lines.at(i), 1);
      lines_ok += code.contains(v) && v.weight() == 19;
    }
    std::set<std::vector<std::uint8_t>> sympl;
    for (const auto& pol : enumerate_symplectic_polarities(space->field_ptr())) {
      const auto v = symplectic_vector(*space, pol);
      if (code.contains(v) && v.weight() == 15) sympl.emplace(v.entries().begin(), v.entries().end());
    }
    const auto at = [&](std::size_t w) { return dist.count(w) ? dist.at(w) : 0; };
    d = std::to_string(total) + " words, weight 15: " + std::to_string(at(15)) + " (" + std::to_string(sympl.size()) +
        " symplectic), weight 19: " + std::to_string(at(19)) + ", minimum weight " + std::to_string(min_weight);
    return total == 128 && sympl.size() >= 28 && at(15) >= 28 && at(19) == 35 && lines_ok == 35;
  });

  report(12, "line-cover inequality", [](std::string& d) {
    bool ok = true;
    for (std::uint32_t q : {2u, 3u, 5u}) {
      const auto r = line_cover_bound_check(q, 3, 0, kSeed);
      d += " q=" + std::to_string(q) + " exhaustive " + std::to_string(r.exhaustive_sets) + ":" +
           std::to_string(r.violations);
      ok = ok && r.passed() && r.exhaustive_sets > 0;
    }
    for (std::uint32_t q : {4u, 5u, 7u}) {
      const auto r = line_cover_bound_check(q, 0, 10000, kSeed);
      d += " q=" + std::to_string(q) + " random " + std::to_string(r.random_sets) + ":" + std::to_string(r.violations);
      ok = ok && r.passed() && r.random_sets == 10000;
    }
    return ok;
  });

  report(13, "c(l) = m1 mod 2 on all lines of PG(5,2)", [](std::string& d) {
    const auto r = general_n_symplectic_check(2, 2);
    d = std::to_string(r.congruence_holds) + "/" + std::to_string(r.lines) + " lines";
    return r.lines == 651 && r.congruence_holds == 651;
  });

  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
