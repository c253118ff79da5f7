#pragma once

#include "rgs/measures.hpp"
#include "rgs/representations.hpp"
#include "rgs/tomographic.hpp"
#include "rgs/twirling.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace rgs {

/// Parses "Z2", "Z2xZ3", "T", "R3", "SU2"; throws std::invalid_argument otherwise.
Group group_from_name(const std::string& name);

/// Index tuple, angle in radians, coordinate array, or matrix of [re, im] rows.
nlohmann::json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Group& group, const nlohmann::json& j);

/// Weights are written as decimal strings with 17 significant digits.
nlohmann::json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// |G|×|G| table of [re, im] pairs indexed by flat element index.
Multiplier multiplier_from_json(const Group& group, const nlohmann::json& j);

/// Array of [re, im] in row-major (p, q) order.
nlohmann::json tomogram_to_json(const Tomogram& f);
Tomogram tomogram_from_json(int d, const nlohmann::json& j);

/// Superoperator matrix, its picture, and the Choi spectrum for Schrödinger maps.
nlohmann::json channel_to_json(const Superoperator& phi, const std::optional<Report>& checks = std::nullopt);

std::string format_double(double x);

}  // namespace rgs
