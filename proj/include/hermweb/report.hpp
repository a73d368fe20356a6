#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermweb/classify.hpp"
#include "hermweb/model_manifolds.hpp"

namespace hermweb {

using Json = nlohmann::ordered_json;

/// Machine-readable result of one command. Serialized as indented JSON with
/// keys in insertion order. Everything except the "timing" object is a pure
/// function of the spec file and flags.
class RunReport {
 public:
  explicit RunReport(std::string command);

  /// A numeric claim: value, tolerance and whether value <= tolerance.
  void claim_at_most(const std::string& key, double value, double tolerance);
  /// A claim checked by the caller (for example value >= threshold).
  void claim(const std::string& key, double value, double tolerance, bool pass);
  /// Plain data (constants, counts, file names); not a claim.
  Json& results() { return doc_["results"]; }
  Json& input() { return doc_["input"]; }
  void warn(const std::string& message);
  void set_status(const std::string& status, int exit_code);
  void set_timing(const std::string& key, double seconds);

  bool all_claims_pass() const;
  const Json& json() const { return doc_; }
  std::string dump() const;
  void write(const std::filesystem::path& path) const;

 private:
  Json doc_;
};

Json to_json(const ClassReport& r);
Json to_json(const ExampleReport& r);

/// CSV with a header row; numbers printed with %.17g.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace hermweb
