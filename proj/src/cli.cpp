#include "hermweb/cli.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "hermweb/classify.hpp"
#include "hermweb/error.hpp"
#include "hermweb/field_io.hpp"
#include "hermweb/flow.hpp"
#include "hermweb/geometry.hpp"
#include "hermweb/model_manifolds.hpp"
#include "hermweb/monge_ampere.hpp"
#include "hermweb/spec_file.hpp"

namespace hermweb {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"ricci", "flatten-conformal", "solve-ma2",
                                              "solve-ma3", "flow", "classify",
                                              "verify-example"};
  return names;
}

namespace {

class Runner {
 public:
  Runner(const CommandOptions& o, RunReport& report) : o_(o), report_(report) {}

  int run() {
    if (o_.csv && !o_.out) throw InputError("--csv needs --out DIR");
    if (o_.out) std::filesystem::create_directories(*o_.out);
    if (o_.command == "verify-example") return verify_example();

    if (!o_.spec) throw InputError(o_.command + " needs --spec PATH");
    spec_ = load_spec(*o_.spec, o_.grid);
    report_.input() = {{"spec", o_.spec->filename().string()},
                       {"digest", spec_.digest},
                       {"name", spec_.name},
                       {"n", spec_.n},
                       {"grid", spec_.grid}};
    for (const auto& w : spec_.warnings) report_.warn(w);
    const auto grid = spec_.make_grid();
    const auto g = spec_.metric.evaluate(grid, "metric");

    if (o_.command == "ricci") return ricci(g);
    if (o_.command == "flatten-conformal") return flatten(g);
    if (o_.command == "solve-ma2") return solve(g, false);
    if (o_.command == "solve-ma3") return solve(g, true);
    if (o_.command == "flow") return flow(g);
    if (o_.command == "classify") return classify_cmd(g);
    throw InputError("unknown command '" + o_.command + "'");
  }

 private:
  double setting(const char* key, double fallback) const {
    const auto it = spec_.solver.find(key);
    return it == spec_.solver.end() ? fallback : it->second;
  }
  double tolerance(double fallback) const { return o_.tol ? *o_.tol : setting("tol", fallback); }
  int max_iter(double fallback) const {
    return o_.max_iter ? *o_.max_iter : static_cast<int>(setting("max_iter", fallback));
  }

  void dump(const std::string& file, const std::vector<ScalarField>& fields) {
    if (!o_.out) return;
    write_fields(*o_.out / file, fields);
    report_.results()["files"][file.substr(0, file.find('.'))] = file;
  }
  void csv(const std::string& file, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& rows) {
    if (!o_.csv) return;
    write_csv(*o_.out / file, header, rows);
    report_.results()["files"][file.substr(0, file.find('.'))] = file;
  }
  int finish() { return report_.all_claims_pass() ? kExitOk : kExitNotConverged; }

  int ricci(const HermitianMetricField& g) {
    const auto ric = chern_ricci(g);
    report_.results()["ricci_norm"] = ricci_norm(g);
    const PointMatrix defect = bott_chern_defect(ric);
    report_.claim_at_most("ricci_bott_chern_defect", defect.cwiseAbs().maxCoeff(), 1e-10);
    dump("ricci.hwfd", hermitian_coefficients(ric));
    return finish();
  }

  int flatten(const HermitianMetricField& g) {
    const double tol = tolerance(1e-10);
    const auto out = conformal_flatten(g);
    const auto det = out.determinant();
    double lo = INFINITY, hi = -INFINITY;
    for (auto v : det.values()) {
      lo = std::min(lo, v.real());
      hi = std::max(hi, v.real());
    }
    report_.results()["ricci_norm_in"] = ricci_norm(g);
    report_.claim_at_most("ricci_norm_out", ricci_norm(out), tol);
    report_.claim_at_most("determinant_relative_spread", (hi - lo) / hi, 1e-12);
    const auto F = ricci_potential(g);
    dump("F.hwfd", {F});
    dump("metric_out.hwfd", out.components());
    return finish();
  }

  std::optional<ScalarField> initial_guess(const PeriodicGrid& grid) const {
    if (!o_.seed) return std::nullopt;
    std::mt19937_64 rng(*o_.seed);
    std::uniform_real_distribution<double> amp(-1e-3, 1e-3), phase(0.0, 2.0 * M_PI);
    ScalarField phi(grid);
    for (int a = 0; a < grid.real_dim(); ++a) {
      if (!grid.active(a)) continue;
      for (int k = 1; k <= 2; ++k) {
        const double c = amp(rng), p = phase(rng);
        phi += ScalarField::from_function(grid, [&](const Coordinates& x) {
          return c * std::cos(2.0 * M_PI * k * x[static_cast<std::size_t>(a)] + p);
        });
      }
    }
    return phi;
  }

  static std::vector<std::vector<double>> history_rows(const std::vector<NewtonRecord>& h) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : h)
      rows.push_back({static_cast<double>(r.iteration), r.residual, r.b, r.step});
    return rows;
  }

  static Json history_json(const std::vector<NewtonRecord>& h) {
    Json j = Json::array();
    for (const auto& r : h)
      j.push_back({{"iteration", r.iteration},
                   {"residual", r.residual},
                   {"b", r.b},
                   {"step", r.step},
                   {"linear_iterations", r.linear_iterations}});
    return j;
  }

  int solve(const HermitianMetricField& g, bool form_type) {
    SolverConfig cfg;
    cfg.tolerance = tolerance(cfg.tolerance);
    cfg.max_iterations = max_iter(cfg.max_iterations);
    cfg.linear_tolerance = setting("linear_tol", cfg.linear_tolerance);
    const auto& grid = g.grid();
    const bool from_ricci = !spec_.potential;
    const ScalarField F = from_ricci ? ricci_potential(g) : evaluate(*spec_.potential, grid);
    report_.results()["F_source"] = from_ricci ? "ricci_potential" : "potential.F";
    dump("F.hwfd", {F});

    std::optional<HermitianMetricField> g0;
    if (form_type) {
      if (!spec_.reference) throw InputError("reference: section required for solve-ma3");
      g0 = spec_.reference->evaluate(grid, "reference");
    }
    const auto seed = initial_guess(grid);
    const std::vector<std::string> header{"iteration", "residual", "b", "step"};
    try {
      const auto sol = form_type ? solve_ma3(g, *g0, F, cfg, seed) : solve_ma2(g, F, cfg, seed);
      report_.claim_at_most("residual", sol.residual(), cfg.tolerance);
      report_.results()["b"] = sol.b;
      report_.results()["iterations"] = sol.iterations();
      report_.results()["history"] = history_json(sol.history);
      report_.results()["ricci_norm_out"] = ricci_norm(sol.metric_out);
      if (form_type) {
        const auto cls = classify(sol.metric_out, 1e-6);
        report_.results()["classify_out"] = to_json(cls);
      }
      dump("phi.hwfd", {sol.phi});
      dump("metric_out.hwfd", sol.metric_out.components());
      csv("history.csv", header, history_rows(sol.history));
      return finish();
    } catch (const SolverFailure& f) {
      report_.claim_at_most("residual",
                            f.history().empty() ? INFINITY : f.history().back().residual,
                            cfg.tolerance);
      report_.results()["failure"] = f.what();
      report_.results()["b"] = f.last_b();
      report_.results()["history"] = history_json(f.history());
      dump("phi.hwfd", {f.last_phi()});
      csv("history.csv", header, history_rows(f.history()));
      report_.set_status("not-converged", kExitNotConverged);
      return kExitNotConverged;
    }
  }

  int flow(const HermitianMetricField& g) {
    FlowOptions opt;
    opt.tolerance = tolerance(opt.tolerance);
    opt.dt0 = setting("dt", opt.dt0);
    opt.max_steps = o_.max_iter ? *o_.max_iter
                                : static_cast<int>(setting("max_steps", opt.max_steps));
    auto rows = [](const FlowResult& r) {
      std::vector<std::vector<double>> out;
      for (const auto& h : r.history) out.push_back({h.t, h.dt, h.ricci_norm});
      return out;
    };
    const std::vector<std::string> header{"t", "dt", "ricci_norm"};
    auto record = [&](const FlowResult& r) {
      report_.results()["t"] = r.state.t;
      report_.results()["steps"] = static_cast<int>(r.history.size()) - 1;
      report_.results()["rejected_steps"] = r.rejected;
      bool monotone = true;
      for (std::size_t k = 1; k < r.history.size(); ++k)
        monotone = monotone && r.history[k].ricci_norm <= r.history[k - 1].ricci_norm;
      report_.results()["ricci_norm_monotone"] = monotone;
      report_.claim_at_most("ricci_norm", r.state.ricci_norm, opt.tolerance);
      const auto diff = r.state.g.kahler_form() - g.kahler_form();
      report_.claim_at_most("bott_chern_drift", bott_chern_defect(diff).cwiseAbs().maxCoeff(),
                            1e-10);
      dump("metric_final.hwfd", r.state.g.components());
      csv("flow.csv", header, rows(r));
    };
    try {
      const auto r = run_flow(g, opt);
      record(r);
      return finish();
    } catch (const FlowFailure& f) {
      record(f.partial());
      report_.results()["failure"] = f.what();
      report_.set_status("not-converged", kExitNotConverged);
      return kExitNotConverged;
    }
  }

  int classify_cmd(const HermitianMetricField& g) {
    const double tol = tolerance(1e-8);
    report_.results()["classification"] = to_json(classify(g, tol));
    return kExitOk;
  }

  int verify_example() {
    if (!o_.name) throw InputError("verify-example needs --name {hopf|nakamura|yoshihara}");
    const std::uint64_t seed = o_.seed.value_or(1);
    Json examples = Json::array();
    bool ok = true;
    auto add = [&](const ExampleReport& r) {
      examples.push_back(to_json(r));
      ok = ok && r.passed();
    };
    if (*o_.name == "hopf") {
      for (int n : {2, 3}) add(hopf_check(hopf_sample(n, 64, seed), n));
    } else if (*o_.name == "nakamura") {
      const std::vector<complex> ts = o_.t ? std::vector<complex>{*o_.t}
                                           : std::vector<complex>{0.05, {0.1, 0.1}, 0.3};
      const int per_t = o_.t ? 100 : 40;
      add(nakamura_check(nakamura_sample(ts, per_t, seed)));
    } else if (*o_.name == "yoshihara") {
      add(yoshihara_check(o_.bound.value_or(1000000)));
      add(flat_volume_descent_check());
    } else {
      throw InputError("unknown example '" + *o_.name + "'");
    }
    report_.input() = {{"example", *o_.name}, {"seed", seed}};
    report_.results()["examples"] = std::move(examples);
    report_.claim("all_checks", ok ? 1.0 : 0.0, 0.0, ok);
    return ok ? kExitOk : kExitNotConverged;
  }

  const CommandOptions& o_;
  RunReport& report_;
  ManifoldSpec spec_;
};

}  // namespace

CommandOutcome run_command(const CommandOptions& options) {
  CommandOutcome outcome{RunReport(options.command), kExitOk};
  const auto start = std::chrono::steady_clock::now();
  try {
    outcome.exit_code = Runner(options, outcome.report).run();
  } catch (const InputError& e) {
    outcome.report.results()["error"] = e.what();
    outcome.exit_code = kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    outcome.report.results()["error"] = e.what();
    outcome.exit_code = kExitInputError;
  } catch (const Error& e) {
    outcome.report.results()["error"] = e.what();
    outcome.exit_code = kExitNotConverged;
  }
  if (outcome.exit_code == kExitInputError) outcome.report.set_status("input-error", kExitInputError);
  else if (outcome.exit_code == kExitNotConverged && outcome.report.json()["status"] == "ok")
    outcome.report.set_status("not-converged", kExitNotConverged);
  outcome.report.set_timing(
      "total_seconds",
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  if (options.out) {
    try {
      outcome.report.write(*options.out / "report.json");
    } catch (const Error&) {
    }
  }
  return outcome;
}

}  // namespace hermweb
