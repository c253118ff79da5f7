#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace rgs {

/// Outcome of a numerical check. `identity` names the relation being exercised.
struct Report {
  std::string check;
  std::string identity;
  nlohmann::json inputs = nlohmann::json::object();
  double residual = 0.0;
  double bound = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
  std::vector<std::string> notes;
};

inline constexpr int kReportSchema = 1;

nlohmann::json to_json(const Report& report);

/// A report whose pass flag is the conjunction of its parts; residual and bound
/// are taken from the part with the largest residual/bound ratio.
Report combine_reports(std::string check, std::string identity, const std::vector<Report>& parts);

}  // namespace rgs
