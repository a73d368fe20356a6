#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "hermweb/cli.hpp"
#include "hermweb/error.hpp"
#include "hermweb/field_io.hpp"
#include "hermweb/report.hpp"
#include "hermweb/spec_file.hpp"
#include "oracles.hpp"

using namespace hermweb;
namespace fs = std::filesystem;

namespace {

const fs::path kSpecs = HERMWEB_SPEC_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::current_path() / "cli_scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMinimal = R"([manifold]
n = 2
grid = 8, 1, 1, 8
[metric]
g11 = 1
g22 = 1
)";

std::string message_of(const std::string& text) {
  try {
    (void)parse_spec(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

CommandOptions spec_command(const std::string& command, const std::string& spec) {
  CommandOptions o;
  o.command = command;
  o.spec = kSpecs / spec;
  return o;
}

}  // namespace

TEST_CASE("FNV-1a digest") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("spec parsing") {
  const auto s = parse_spec(kMinimal);
  CHECK(s.n == 2);
  CHECK(s.name == "unnamed");
  CHECK(s.grid == std::vector<int>{8, 1, 1, 8});
  CHECK(s.digest == fnv1a_hex(kMinimal));
  CHECK(s.warnings.empty());
  CHECK_FALSE(s.reference);
  CHECK_FALSE(s.potential);
  CHECK(parse_spec(kMinimal, {1, 16, 16, 1}).make_grid().axis_size(1) == 16);

  const auto bump = load_spec(kSpecs / "bump.hwspec");
  CHECK(bump.name == "bump");
  CHECK(bump.solver.at("tol") == 1e-6);
  CHECK(bump.digest == fnv1a_hex(slurp(kSpecs / "bump.hwspec")));
  const auto g = bump.metric.evaluate(bump.make_grid(), "metric");
  CHECK(g(0, 0)[0].real() == doctest::Approx(1.5));

  const auto b3 = load_spec(kSpecs / "balanced3.hwspec");
  REQUIRE(b3.reference);
  const auto h = b3.metric.evaluate(b3.make_grid(), "metric");
  CHECK(h(1, 0)[3] == std::conj(h(0, 1)[3]));
  CHECK(h(0, 1)[3].imag() != 0.0);
}

TEST_CASE("spec errors name the field") {
  const std::string base = "[manifold]\nn = 2\ngrid = 8, 1, 1, 8\n[metric]\n";
  CHECK(message_of(base + "g11 = -1\ng22 = 1\n").find("not positive definite") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\n").find("metric.g22") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\ng21 = 0\n").find("metric.g21") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\ng11.im = 1\n").find("diagonal") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\ng13 = 0\n").find("metric.g13") != std::string::npos);
  CHECK(message_of(base + "g11 = 1 +\ng22 = 1\n").find("metric.g11 (line 5)") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng11 = 2\ng22 = 1\n").find("duplicate") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\n[extra]\n").find("unknown section") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\n[solver]\nfoo = 1\n").find("solver.foo") != std::string::npos);
  CHECK(message_of(base + "g11 = 1\ng22 = 1\n[solver]\ntol = abc\n").find("solver.tol") != std::string::npos);
  CHECK(message_of("[manifold]\nn = 4\ngrid = 8,8\n[metric]\ng11 = 1\n").find("manifold.n") != std::string::npos);
  CHECK(message_of("[manifold]\nn = 2\ngrid = 7, 1, 1, 8\n[metric]\ng11 = 1\ng22 = 1\n").find("manifold.grid") != std::string::npos);
  CHECK(message_of("[manifold]\nn = 2\ngrid = 8, 8\n[metric]\ng11 = 1\ng22 = 1\n").find("manifold.grid") != std::string::npos);
  CHECK(message_of("[metric]\ng11 = 1\n").find("manifold") != std::string::npos);
  CHECK(message_of(base + "g11 = log(x1)\ng22 = 1\n").find("not finite") != std::string::npos);
  CHECK_THROWS_AS(load_spec(kSpecs / "no_such.hwspec"), InputError);
}

TEST_CASE("periodicity warning") {
  const std::string base = "[manifold]\nn = 2\ngrid = 8, 1, 1, 8\n[metric]\ng22 = 1\n";
  const auto ok = parse_spec(base + "g11 = 2 + cos(2*pi*x1)\n");
  CHECK(ok.warnings.empty());
  const auto jump = parse_spec(base + "g11 = 2 + 0.1*x1\n");
  REQUIRE(jump.warnings.size() == 1);
  CHECK(jump.warnings[0].find("metric") == 0);
  const auto f = parse_spec(base + "g11 = 1\n[potential]\nF = y2\n");
  REQUIRE(f.warnings.size() == 1);
  CHECK(f.warnings[0].find("potential.F") == 0);
}

TEST_CASE("field dump round trip and header") {
  std::mt19937_64 rng(4);
  const auto grid = PeriodicGrid::with_active_axes(3, 8, {0, 5});
  const std::vector<ScalarField> fields{oracle::band_limited_complex(grid, rng),
                                        oracle::band_limited_complex(grid, rng)};
  const auto dir = scratch("dump");
  write_fields(dir / "f.hwfd", fields);
  const auto bytes = slurp(dir / "f.hwfd");
  REQUIRE(bytes.size() == 32 + 2 * grid.size() * 16);
  CHECK(bytes.substr(0, 4) == "HWFD");
  auto u16 = [&](std::size_t at) {
    return static_cast<unsigned>(static_cast<unsigned char>(bytes[at])) |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[at + 1])) << 8;
  };
  CHECK(u16(4) == kFieldDumpVersion);
  CHECK(u16(6) == 3);
  for (int a = 0; a < 6; ++a) CHECK(u16(8 + 4 * static_cast<std::size_t>(a)) == (a == 0 || a == 5 ? 8u : 1u));

  const auto back = read_fields(dir / "f.hwfd");
  REQUIRE(back.size() == 2);
  CHECK(back[0].grid() == grid);
  CHECK((back[0] - fields[0]).max_abs() == 0.0);
  CHECK((back[1] - fields[1]).max_abs() == 0.0);

  std::ofstream(dir / "short.hwfd", std::ios::binary) << bytes.substr(0, bytes.size() - 8);
  CHECK_THROWS_AS(read_fields(dir / "short.hwfd"), InputError);
  std::ofstream(dir / "magic.hwfd", std::ios::binary) << "XXXX" << bytes.substr(4);
  CHECK_THROWS_AS(read_fields(dir / "magic.hwfd"), InputError);
  std::string v2 = bytes;
  v2[4] = 2;
  std::ofstream(dir / "v2.hwfd", std::ios::binary) << v2;
  CHECK_THROWS_AS(read_fields(dir / "v2.hwfd"), InputError);
  CHECK_THROWS_AS(write_fields(dir / "none.hwfd", {}), InputError);
}

TEST_CASE("report claims and layout") {
  RunReport r("ricci");
  r.claim_at_most("small", 1e-12, 1e-10);
  CHECK(r.all_claims_pass());
  r.claim("big", 2.0, 1.0, false);
  CHECK_FALSE(r.all_claims_pass());
  r.warn("careful");
  r.set_timing("total_seconds", 0.5);
  const auto& j = r.json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"tool", "version", "command", "status", "exit_code",
                                         "input", "results", "claims", "warnings", "timing"});
  CHECK(j["claims"]["small"]["pass"] == true);
  CHECK(j["claims"]["big"]["pass"] == false);
  CHECK(j["warnings"][0] == "careful");
  CHECK(Json::parse(r.dump()) == j);

  const auto dir = scratch("csv");
  write_csv(dir / "h.csv", {"a", "b"}, {{1.0, 0.1}, {2.0, 0.25}});
  CHECK(slurp(dir / "h.csv") == "a,b\n1,0.10000000000000001\n2,0.25\n");
}

TEST_CASE("commands: exit codes") {
  CHECK(run_command(spec_command("ricci", "bump.hwspec")).exit_code == kExitOk);
  CHECK(run_command(spec_command("classify", "balanced3.hwspec")).exit_code == kExitOk);
  CHECK(run_command(spec_command("flatten-conformal", "conformal.hwspec")).exit_code == kExitOk);
  CHECK(run_command(spec_command("solve-ma2", "manufactured.hwspec")).exit_code == kExitOk);
  CHECK(run_command(spec_command("solve-ma3", "balanced3.hwspec")).exit_code == kExitOk);

  auto missing = spec_command("ricci", "no_such.hwspec");
  const auto m = run_command(missing);
  CHECK(m.exit_code == kExitInputError);
  CHECK(m.report.json()["status"] == "input-error");

  CommandOptions nospec;
  nospec.command = "ricci";
  CHECK(run_command(nospec).exit_code == kExitInputError);

  auto csv_only = spec_command("ricci", "bump.hwspec");
  csv_only.csv = true;
  CHECK(run_command(csv_only).exit_code == kExitInputError);

  // solve-ma3 needs n = 3
  CHECK(run_command(spec_command("solve-ma3", "bump.hwspec")).exit_code == kExitInputError);

  auto capped = spec_command("solve-ma2", "bump_ma2.hwspec");
  capped.max_iter = 1;
  const auto c = run_command(capped);
  CHECK(c.exit_code == kExitNotConverged);
  CHECK(c.report.json()["status"] == "not-converged");
  CHECK(c.report.json()["results"]["history"].size() == 2);

  auto flow = spec_command("flow", "bump.hwspec");
  flow.max_iter = 2;
  CHECK(run_command(flow).exit_code == kExitNotConverged);

  CommandOptions ex;
  ex.command = "verify-example";
  ex.name = "yoshihara";
  ex.bound = 1000;
  CHECK(run_command(ex).exit_code == kExitOk);
  ex.name = "nakamura";
  ex.t = complex(0.9, 0.0);
  CHECK(run_command(ex).exit_code == kExitInputError);
  ex.name = "klein";
  CHECK(run_command(ex).exit_code == kExitInputError);
}

TEST_CASE("commands: outputs are deterministic apart from timing") {
  const auto dir = scratch("ricci");
  auto o = spec_command("flow", "bump.hwspec");
  o.grid = {1, 1, 16, 16};
  o.tol = 1e-3;
  o.out = dir;
  o.csv = true;
  const auto a = run_command(o);
  REQUIRE(a.exit_code == kExitOk);
  for (const char* f : {"report.json", "flow.csv", "metric_final.hwfd"}) CHECK(fs::exists(dir / f));
  const auto first_dump = slurp(dir / "metric_final.hwfd");
  const auto b = run_command(o);
  CHECK(without_timing(a.report.json()) == without_timing(b.report.json()));
  CHECK(slurp(dir / "metric_final.hwfd") == first_dump);
  CHECK(Json::parse(slurp(dir / "report.json")) == b.report.json());
  const auto metric = read_fields(dir / "metric_final.hwfd");
  CHECK(metric.size() == 4);
  CHECK(a.report.json()["input"]["grid"] == Json{1, 1, 16, 16});

  CommandOptions ex;
  ex.command = "verify-example";
  ex.name = "hopf";
  ex.seed = 11;
  CHECK(without_timing(run_command(ex).report.json()) ==
        without_timing(run_command(ex).report.json()));
}

#ifdef HERMWEB_CLI_PATH
TEST_CASE("executable exit codes") {
  auto run = [](const std::string& args) {
    const std::string cmd = std::string(HERMWEB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string bump = (kSpecs / "bump.hwspec").string();
  CHECK(run("ricci --spec " + bump) == 0);
  CHECK(run("ricci --spec " + bump + " --bogus") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("verify-example --name nope") == 1);
  CHECK(run("verify-example --name yoshihara --bound 0") == 1);
  CHECK(run("ricci --spec " + bump + " --grid 1,1,x,16") == 1);
  CHECK(run("ricci --spec " + bump + " --csv") == 1);
  CHECK(run("solve-ma2 --spec " + (kSpecs / "bump_ma2.hwspec").string() + " --max-iter 1") == 2);
  CHECK(run("verify-example --name nakamura --t 0.1,0.2") == 0);
}
#endif
