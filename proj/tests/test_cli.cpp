#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <string>

#include <json.hpp>

#include "galois/cache.hpp"
#include "galois/suites.hpp"

using namespace galois;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("galois_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// runs the CLI with stdout sent to out; returns the exit status
int cli(const std::string& args, const fs::path& out) {
  const std::string cmd = std::string("\"") + GALOIS_CLI + "\" " + args + " > \"" + out.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string strip_runtime(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"runtimeMs\"") == std::string::npos) out += line + "\n";
  return out;
}

ProjectiveSpacePtr pg3(std::uint32_t q) { return std::make_shared<ProjectiveSpace>(make_field_of_order(q), 3); }

}  // namespace

TEST_CASE("cache round trip keeps the basis") {
  TempDir dir;
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto space = pg3(q);
    const auto code = build_code(space, 1, 1);
    const auto key = CacheKey::of(*space, 1, 1);
    const auto file = dir.path / key.file_name();
    write_basis(file, key, code.basis());
    const auto back = read_basis(file, key, code.length());
    REQUIRE(back.has_value());
    REQUIRE(back->rank() == code.dimension());
    for (std::size_t r = 0; r < back->rank(); ++r) CHECK(back->row(r) == code.basis().row(r));

    auto other = key;
    other.k = 0;
    CHECK_FALSE(read_basis(file, other, code.length()).has_value());
    CHECK_FALSE(read_basis(file, key, code.length() + 1).has_value());
  }
  CHECK_FALSE(read_basis(dir.path / "missing.fpc", CacheKey::of(*pg3(2), 1, 1), 35).has_value());
}

TEST_CASE("CodeCache loads from disk on the second instance") {
  TempDir dir;
  auto space = pg3(3);
  {
    CodeCache c(dir.path);
    bool hit = true;
    CHECK(c.get(space, 1, 1, &hit).dimension() == 20);
    CHECK_FALSE(hit);
    c.get(space, 1, 1, &hit);
    CHECK(hit);
    CHECK(c.builds() == 1);
  }
  CodeCache c(dir.path);
  bool hit = false;
  CHECK(c.get(space, 1, 1, &hit).dimension() == 20);
  CHECK(hit);
  CHECK(c.builds() == 0);
}

TEST_CASE("a cache file with a bad header is rebuilt") {
  TempDir dir;
  const auto out = dir.path / "out.json";
  const std::string common = "--cache-dir \"" + dir.path.string() + "\" ";
  REQUIRE(cli(common + "dimension --q 2", out) == 0);
  const auto file = dir.path / CacheKey::of(*pg3(2), 1, 1).file_name();
  REQUIRE(fs::exists(file));
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.put('X');
  }
  REQUIRE(cli(common + "dimension --q 2", out) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["dimension"] == 7);
  CHECK(j["cacheHit"] == false);
  CHECK(slurp(file).substr(0, 4) == "FPC1");
}

TEST_CASE("a corrupted cached basis makes the suite fail") {
  TempDir dir;
  const auto out = dir.path / "out.txt";
  const std::string common = "--cache-dir \"" + dir.path.string() + "\" ";
  REQUIRE(cli(common + "suite dimension --q 2", out) == 0);

  // flip one entry of row 0 in a column that is no row's pivot: the file
  // still reads as a valid echelon basis, but of a different space
  auto space = pg3(2);
  const auto key = CacheKey::of(*space, 1, 1);
  const auto file = dir.path / key.file_name();
  const auto basis = read_basis(file, key, 35);
  REQUIRE(basis.has_value());
  std::size_t col = 0;
  const auto& piv = basis->pivots();
  while (std::find(piv.begin(), piv.end(), col) != piv.end()) ++col;
  const std::size_t header = 4 + 4 * (2 + key.modulus.size() + 5);
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(static_cast<std::streamoff>(header + col / 8));
    const char b = static_cast<char>(f.get());
    f.seekp(static_cast<std::streamoff>(header + col / 8));
    f.put(static_cast<char>(b ^ (1 << (col % 8))));
  }
  const auto tampered = read_basis(file, key, 35);
  REQUIRE(tampered.has_value());
  CHECK(tampered->row(0) != basis->row(0));

  CHECK(cli(common + "suite dimension --q 2", out) != 0);
  CHECK(cli(common + "suite all --q 2..3", out) != 0);
}

TEST_CASE("warm runs are byte-identical apart from runtime") {
  TempDir dir;
  const std::string common = "--cache-dir \"" + dir.path.string() + "\" --seed 7 ";
  const auto a = dir.path / "a.json";
  const auto b = dir.path / "b.json";
  REQUIRE(cli(common + "suite all --q 2..3", a) == 0);  // fills the cache
  REQUIRE(cli(common + "suite all --q 2..3", a) == 0);
  REQUIRE(cli(common + "--threads 3 suite all --q 2..3", b) == 0);
  CHECK(strip_runtime(slurp(a)) == strip_runtime(slurp(b)));
  const auto j = nlohmann::json::parse(slurp(a));
  REQUIRE(j.is_array());
  for (const auto& r : j) {
    CHECK(r["schemaVersion"] == kSchemaVersion);
    CHECK(r["seed"] == 7);
    CHECK(r["pass"] == true);
  }
}

TEST_CASE("suite examples") {
  TempDir dir;
  const auto out = dir.path / "out.json";
  const std::string common = "--cache-dir \"" + dir.path.string() + "\" ";

  REQUIRE(cli(common + "suite dimension --q 2..5", out) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.size() == 4);
  const int dims[] = {7, 20, 37, 86};
  for (int i = 0; i < 4; ++i) {
    CHECK(j[i]["q"] == i + 2);
    CHECK(j[i]["checks"][0]["claimId"] == "dimension.formula");
    CHECK(j[i]["checks"][0]["computed"] == dims[i]);
  }

  REQUIRE(cli(common + "suite weights --q 8", out) == 0);
  j = nlohmann::json::parse(slurp(out));
  bool seen = false;
  for (const auto& c : j[0]["checks"])
    if (c["claimId"] == "weight.line") {
      seen = true;
      CHECK(c["computed"] == nlohmann::json::array({649}));
    }
  CHECK(seen);

  REQUIRE(cli(common + "suite symplectic --q 3", out) == 0);
  j = nlohmann::json::parse(slurp(out));
  std::size_t witness = 0;
  for (const auto& c : j[0]["checks"]) {
    if (c["claimId"] == "symplectic.membership") CHECK(c["computed"] == 0);
    if (std::string(c["claimId"]).rfind("witness.", 0) == 0) {
      ++witness;
      CHECK(c["pass"] == true);
    }
  }
  CHECK(witness == 5);

  REQUIRE(cli(common + "--format csv suite duality --q 2", out) == 0);
  CHECK(slurp(out).rfind("suite,q,seed,claimId,anchor,expected,computed,pass,informational,status\n", 0) == 0);
}

TEST_CASE("every suite passes on small q") {
  TempDir dir;
  const auto out = dir.path / "out.json";
  CHECK(cli("--cache-dir \"" + dir.path.string() + "\" suite all --q 2..4", out) == 0);
}

TEST_CASE("bad invocations are rejected") {
  TempDir dir;
  const auto out = dir.path / "out.txt";
  const std::string common = "--cache-dir \"" + dir.path.string() + "\" ";
  CHECK(cli(common + "suite nosuch", out) != 0);
  CHECK(cli(common + "suite dimension --q 2..x", out) != 0);
  CHECK(cli(common + "--format xml suite dimension --q 2", out) != 0);
}

TEST_CASE("over-budget q is reported as skipped") {
  SuiteOptions o;
  CodeCache cache("");
  o.cache = &cache;
  const auto r = run_suite("symplectic", 7, o);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].status == "skipped");
  CHECK(r.checks[0].informational);
  CHECK(r.pass);
}
