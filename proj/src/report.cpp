#include "rgs/report.hpp"

#include <algorithm>

namespace rgs {

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["check"] = report.check;
  j["identity"] = report.identity;
  j["inputs"] = report.inputs;
  j["residual"] = report.residual;
  j["bound"] = report.bound;
  j["pass"] = report.pass;
  j["details"] = report.details;
  j["notes"] = report.notes;
  return j;
}

Report combine_reports(std::string check, std::string identity, const std::vector<Report>& parts) {
  Report out;
  out.check = std::move(check);
  out.identity = std::move(identity);
  out.pass = !parts.empty();
  double worst = -1.0;
  nlohmann::json children = nlohmann::json::array();
  for (const auto& part : parts) {
    out.pass = out.pass && part.pass;
    const double ratio = part.bound > 0.0 ? part.residual / part.bound : part.residual;
    if (ratio > worst) {
      worst = ratio;
      out.residual = part.residual;
      out.bound = part.bound;
    }
    children.push_back(to_json(part));
    for (const auto& note : part.notes) {
      if (std::find(out.notes.begin(), out.notes.end(), note) == out.notes.end()) {
        out.notes.push_back(note);
      }
    }
  }
  out.details["parts"] = std::move(children);
  return out;
}

}  // namespace rgs
