#pragma once

#include "subseries/counterexample.hpp"
#include "subseries/fn32.hpp"
#include "subseries/selector.hpp"
#include "subseries/trace.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace subseries {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const fn32::Symmetry& s);
nlohmann::json to_json(const CertStep& step);
nlohmann::json to_json(const CaseReport& report);
nlohmann::json to_json(const TwoSeriesResult& result);
nlohmann::json to_json(const std::vector<fn32::ClassInfo>& classes);
nlohmann::json to_json(const cx::OscillationReport& report);

// "j,in_A,term,S" rows; either every index or only decade checkpoints
void write_trace_csv(std::ostream& out, const PartialSumTrace& trace, const TermStream& stream,
                     bool checkpoints_only = false);

// exact block-boundary rows for the four-series construction
void write_oscillation_csv(std::ostream& out, const cx::OscillationReport& report);

std::string format_double(double v);  // fixed "%.17g" rendering

}  // namespace subseries
