#include "hermweb/report.hpp"

#include <cstdio>
#include <fstream>

#include "hermweb/error.hpp"

namespace hermweb {

RunReport::RunReport(std::string command) {
  doc_["tool"] = "hermweb";
  doc_["version"] = HERMWEB_VERSION;
  doc_["command"] = std::move(command);
  doc_["status"] = "ok";
  doc_["exit_code"] = 0;
  doc_["input"] = Json::object();
  doc_["results"] = Json::object();
  doc_["claims"] = Json::object();
  doc_["warnings"] = Json::array();
  doc_["timing"] = Json::object();
}

void RunReport::claim(const std::string& key, double value, double tolerance, bool pass) {
  doc_["claims"][key] = {{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

void RunReport::claim_at_most(const std::string& key, double value, double tolerance) {
  claim(key, value, tolerance, value <= tolerance);
}

void RunReport::warn(const std::string& message) { doc_["warnings"].push_back(message); }

void RunReport::set_status(const std::string& status, int exit_code) {
  doc_["status"] = status;
  doc_["exit_code"] = exit_code;
}

void RunReport::set_timing(const std::string& key, double seconds) {
  doc_["timing"][key] = seconds;
}

bool RunReport::all_claims_pass() const {
  for (const auto& [key, c] : doc_["claims"].items())
    if (!c["pass"].get<bool>()) return false;
  return true;
}

std::string RunReport::dump() const { return doc_.dump(2) + "\n"; }

void RunReport::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << dump();
}

Json to_json(const ClassReport& r) {
  Json j;
  j["tolerance"] = r.tolerance;
  auto entry = [&](const char* name, double residual, bool flag) {
    j[name] = {{"residual", residual}, {"flag", flag}};
  };
  entry("kahler", r.kahler_residual, r.kahler);
  entry("balanced", r.balanced_residual, r.balanced);
  entry("gauduchon", r.gauduchon_residual, r.gauduchon);
  entry("strongly_gauduchon", r.strongly_gauduchon_defect, r.strongly_gauduchon);
  entry("astheno_kahler", r.astheno_kahler_residual, r.astheno_kahler);
  j["astheno_kahler"]["vacuous"] = r.astheno_kahler_vacuous;
  return j;
}

Json to_json(const ExampleReport& r) {
  Json j;
  j["example"] = r.example;
  j["passed"] = r.passed();
  Json checks = Json::object();
  for (const auto& c : r.checks) {
    checks[c.name] = {{"computed", c.computed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}};
    if (!c.detail.empty()) checks[c.name]["detail"] = c.detail;
  }
  j["checks"] = std::move(checks);
  return j;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << "\n";
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      out << (k ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace hermweb
