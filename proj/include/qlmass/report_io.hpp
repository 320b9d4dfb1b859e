#pragma once

#include <iosfwd>
#include <string>

#include "qlmass/sweep.hpp"

namespace qlmass {

/// One row per epsilon: epsilon, mBY_x1..t, mhat_x1..t, malpha_x1..t, tags, residuals.
void write_sweep_csv(std::ostream& out, const MassSweepRecord& record);

/// Fitted limits, rates, tags and failures as JSON text.
std::string sweep_summary_json(const MassSweepRecord& record);

std::string verify_report_json(const VerifyReport& report);

struct WrittenFiles {
  std::string csv;
  std::string summary;
};

/// Writes <dir>/<prefix>.csv and <dir>/<prefix>_summary.json, creating dir.
WrittenFiles write_sweep_outputs(const SweepConfig& cfg, const MassSweepRecord& record);

/// Human-readable digest of a summary file; sets passed from its "passed" field.
std::string describe_summary(const std::string& json_text, bool& passed);

}  // namespace qlmass
