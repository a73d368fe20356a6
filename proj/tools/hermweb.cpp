#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "hermweb/cli.hpp"

namespace {

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  return out;
}

hermweb::complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hermweb: Chern-Ricci-flat Hermitian metrics on torus models"};
  app.set_version_flag("--version", HERMWEB_VERSION);
  app.require_subcommand(1);

  hermweb::CommandOptions opt;
  std::string spec, out, grid, t;
  double tol = 0.0;
  int max_iter = 0;
  std::uint64_t seed = 0;
  std::string name;
  std::int64_t bound = 0;

  std::vector<CLI::App*> subs;
  for (const auto& cmd : hermweb::command_names()) {
    auto* sub = app.add_subcommand(cmd);
    sub->add_option("--spec", spec, "manifold spec file");
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--max-iter", max_iter, "iteration (or flow step) cap");
    sub->add_option("--grid", grid, "points per real axis, N1,N2,...");
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--csv", opt.csv, "write CSV histories into --out");
    sub->add_option("--seed", seed, "seed for randomized inputs");
    if (cmd == "verify-example") {
      sub->add_option("--name", name, "example")
          ->check(CLI::IsMember({"hopf", "nakamura", "yoshihara"}))
          ->required();
      sub->add_option("--bound", bound, "root-of-unity scan bound")->check(CLI::PositiveNumber);
      sub->add_option("--t", t, "Nakamura deformation parameter RE,IM");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hermweb::kExitInputError;
  }

  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    opt.command = sub->get_name();
    try {
      if (sub->count("--spec")) opt.spec = spec;
      if (sub->count("--tol")) opt.tol = tol;
      if (sub->count("--max-iter")) opt.max_iter = max_iter;
      if (sub->count("--grid")) opt.grid = parse_grid(grid);
      if (sub->count("--out")) opt.out = out;
      if (sub->count("--seed")) opt.seed = seed;
      if (opt.command == "verify-example") {
        opt.name = name;
        if (sub->count("--bound")) opt.bound = bound;
        if (sub->count("--t")) opt.t = parse_complex(t);
      }
    } catch (const std::exception& e) {
      std::cerr << "hermweb: bad flag value: " << e.what() << "\n";
      return hermweb::kExitInputError;
    }
  }

  const auto outcome = hermweb::run_command(opt);
  std::cout << outcome.report.dump();
  const auto& results = outcome.report.json()["results"];
  if (results.contains("error"))
    std::cerr << "hermweb: " << results["error"].get<std::string>() << "\n";
  return outcome.exit_code;
}
