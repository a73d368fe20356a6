#include "hermweb/spec_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hermweb/error.hpp"

namespace hermweb {

namespace {

const std::set<std::string> kSolverKeys{"tol", "max_iter", "linear_tol", "dt",
                                        "max_steps", "seed", "bound"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw InputError(path + " (line " + std::to_string(line) + "): " + what);
}

int parse_int(const std::string& text, const std::string& path, int line) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    fail(path, line, "expected an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& path, int line) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    fail(path, line, "expected a number, got '" + text + "'");
  return v;
}

std::vector<int> parse_sizes(const std::string& text, const std::string& path, int line) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(trim(item), path, line));
  return out;
}

struct Entry {
  std::string value;
  int line;
};

// Parses the "gIJ" / "gIJ.im" key family into (i, j, imaginary).
std::optional<std::tuple<int, int, bool>> metric_key(const std::string& key) {
  if (key.size() < 3 || key[0] != 'g') return std::nullopt;
  const bool imag = key.size() == 6 && key.substr(3) == ".im";
  if (key.size() != 3 && !imag) return std::nullopt;
  if (!std::isdigit(static_cast<unsigned char>(key[1])) ||
      !std::isdigit(static_cast<unsigned char>(key[2])))
    return std::nullopt;
  return std::tuple{key[1] - '1', key[2] - '1', imag};
}

MetricExprBlock parse_block(const std::string& section, const std::map<std::string, Entry>& entries,
                            int n) {
  MetricExprBlock block;
  block.n = n;
  block.re.assign(static_cast<std::size_t>(n * n), std::nullopt);
  block.im.assign(static_cast<std::size_t>(n * n), std::nullopt);
  for (const auto& [key, entry] : entries) {
    const std::string path = section + "." + key;
    const auto parsed = metric_key(key);
    if (!parsed) fail(path, entry.line, "unknown key");
    const auto [i, j, imag] = *parsed;
    if (i < 0 || j < 0 || i >= n || j >= n) fail(path, entry.line, "index out of range for n");
    if (j < i) fail(path, entry.line, "give the upper triangle (j >= i); the rest is conjugate");
    if (imag && i == j) fail(path, entry.line, "diagonal entries are real");
    try {
      auto& slot = (imag ? block.im : block.re)[static_cast<std::size_t>(i * n + j)];
      slot = parse_expr(entry.value, n);
    } catch (const ParseError& e) {
      fail(path, entry.line, e.what());
    }
  }
  for (int i = 0; i < n; ++i)
    if (!block.re[static_cast<std::size_t>(i * n + i)])
      throw InputError(section + ".g" + std::to_string(i + 1) + std::to_string(i + 1) +
                       ": missing diagonal entry");
  return block;
}

}  // namespace

HermitianMetricField MetricExprBlock::evaluate(const PeriodicGrid& grid,
                                               const std::string& where) const {
  std::vector<ScalarField> g(static_cast<std::size_t>(n * n), ScalarField(grid));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const auto k = static_cast<std::size_t>(i * n + j);
      ScalarField v(grid);
      if (re[k]) v += hermweb::evaluate(*re[k], grid);
      if (im[k]) v += kI * hermweb::evaluate(*im[k], grid);
      g[static_cast<std::size_t>(j * n + i)] = v.conj();
      g[k] = std::move(v);
    }
  if (auto bad = first_non_positive_point(g, n)) {
    const auto x = grid.coordinates(*bad);
    std::ostringstream os;
    os << where << ": metric is not positive definite at grid point " << *bad << " (";
    for (int a = 0; a < grid.real_dim(); ++a)
      os << (a ? ", " : "") << x[static_cast<std::size_t>(a)];
    os << ")";
    throw InputError(os.str());
  }
  return HermitianMetricField(grid, std::move(g));
}

double MetricExprBlock::periodicity_defect(const PeriodicGrid& grid) const {
  double worst = 0.0;
  for (const auto* part : {&re, &im})
    for (const auto& e : *part)
      if (e) worst = std::max(worst, hermweb::periodicity_defect(*e, grid));
  return worst;
}

PeriodicGrid ManifoldSpec::make_grid() const { return PeriodicGrid(n, grid); }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ManifoldSpec parse_spec(std::string_view text, const std::vector<int>& grid_override) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::string current;
  int line_no = 0;
  std::stringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("spec", line_no, "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known{"manifold", "metric", "reference", "potential",
                                               "solver"};
      if (!known.count(current)) fail(current, line_no, "unknown section");
      if (sections.count(current)) fail(current, line_no, "duplicate section");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(current.empty() ? "spec" : current, line_no, "expected key = value");
    if (current.empty()) fail("spec", line_no, "key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(current, line_no, "empty key or value");
    if (!sections[current].emplace(key, Entry{value, line_no}).second)
      fail(current + "." + key, line_no, "duplicate key");
  }

  ManifoldSpec spec;
  spec.digest = fnv1a_hex(text);
  if (!sections.count("manifold")) throw InputError("manifold: section missing");
  if (!sections.count("metric")) throw InputError("metric: section missing");
  auto& m = sections["manifold"];
  for (const auto& [key, entry] : m)
    if (key != "name" && key != "n" && key != "grid")
      fail("manifold." + key, entry.line, "unknown key");
  if (!m.count("n")) throw InputError("manifold.n: missing");
  spec.n = parse_int(m["n"].value, "manifold.n", m["n"].line);
  if (spec.n < 2 || spec.n > kMaxComplexDim) fail("manifold.n", m["n"].line, "n must be 2 or 3");
  spec.name = m.count("name") ? m["name"].value : "unnamed";
  if (!grid_override.empty()) {
    spec.grid = grid_override;
  } else {
    if (!m.count("grid")) throw InputError("manifold.grid: missing");
    spec.grid = parse_sizes(m["grid"].value, "manifold.grid", m["grid"].line);
  }
  if (static_cast<int>(spec.grid.size()) != 2 * spec.n)
    throw InputError("manifold.grid: expected " + std::to_string(2 * spec.n) + " sizes");
  try {
    (void)spec.make_grid();
  } catch (const InputError& e) {
    throw InputError(std::string("manifold.grid: ") + e.what());
  }

  spec.metric = parse_block("metric", sections["metric"], spec.n);
  if (sections.count("reference")) spec.reference = parse_block("reference", sections["reference"], spec.n);
  if (sections.count("potential")) {
    for (const auto& [key, entry] : sections["potential"]) {
      if (key != "F") fail("potential." + key, entry.line, "unknown key");
      try {
        spec.potential = parse_expr(entry.value, spec.n);
      } catch (const ParseError& e) {
        fail("potential.F", entry.line, e.what());
      }
    }
  }
  if (sections.count("solver"))
    for (const auto& [key, entry] : sections["solver"]) {
      if (!kSolverKeys.count(key)) fail("solver." + key, entry.line, "unknown key");
      spec.solver[key] = parse_double(entry.value, "solver." + key, entry.line);
    }

  // Validate everything that feeds a solver on the spec grid.
  const auto grid = spec.make_grid();
  (void)spec.metric.evaluate(grid, "metric");
  if (spec.reference) (void)spec.reference->evaluate(grid, "reference");
  if (spec.potential) (void)evaluate(*spec.potential, grid);

  auto warn = [&](const std::string& where, double defect) {
    if (defect > 1e-8) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", defect);
      spec.warnings.push_back(where + ": coefficients jump by " + buf +
                              " across the periodic boundary");
    }
  };
  warn("metric", spec.metric.periodicity_defect(grid));
  if (spec.reference) warn("reference", spec.reference->periodicity_defect(grid));
  if (spec.potential) warn("potential.F", periodicity_defect(*spec.potential, grid));
  return spec;
}

ManifoldSpec load_spec(const std::filesystem::path& path, const std::vector<int>& grid_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open spec file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), grid_override);
}

}  // namespace hermweb
