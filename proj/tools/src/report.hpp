#pragma once

#include <string>

#include "json.hpp"

#include "config.hpp"
#include "rtmix/extensions.hpp"
#include "rtmix/hull.hpp"
#include "rtmix/selection.hpp"
#include "rtmix/verify.hpp"

namespace rtmix::cli {

using nlohmann::json;

/// 17 significant digits in scientific notation.
std::string format_number(double x);

/// Writes through a temporary file and rename, so readers never see a
/// partial report.
void write_atomic(const std::string& path, const std::string& content);

json config_json(const RunConfig& cfg);
json hull_json(const StateVector& z, const EnergyAtPoint& e, const HullMembership& hm);
json selection_json(const SelectionResult& r, const SelectionOptions& opt);
json verify_json(const VerifyReport& rep);

/// Header t,phase,a_or_r,E; one row per sample, LF endings.
std::string trajectory_csv(const ExtensionTrajectory& tr);
/// key=value phase schedule.
std::string schedule_text(const ExtensionTrajectory& tr, const RunConfig& cfg);
/// Standalone matplotlib script reading only `csv_name` from its own directory.
std::string plot_script(const std::string& csv_name);

}  // namespace rtmix::cli
