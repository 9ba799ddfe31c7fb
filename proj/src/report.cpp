#include "subseries/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>

namespace subseries {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json to_json(const fn32::Symmetry& s) {
    json j;
    j["perm"] = {s.perm[0] + 1, s.perm[1] + 1, s.perm[2] + 1};
    j["flip"] = {s.flip[0], s.flip[1], s.flip[2]};
    return j;
}

json to_json(const CertStep& step) {
    json j;
    j["claim"] = step.claim;
    j["coordinate"] = step.coordinate;
    j["set"] = step.set_desc;
    j["verdict"] = to_string(step.verdict);
    j["rule"] = step.rule;
    j["operands"] = step.operands;
    j["numeric"] = step.numeric;
    if (step.member) {
        j["member"] = fn32::PartialFunction::from_code(step.member->first).to_string();
        j["member_coordinate"] = step.member->second;
    }
    return j;
}

json to_json(const CaseReport& report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["instance"] = report.instance;
    j["family_type"] = to_string(report.family_type);
    j["case"] = to_string(report.tag);
    j["relabeling"] = to_json(report.relabeling);
    j["chosen_set"] = report.chosen.describe();
    json steps = json::array();
    for (const auto& s : report.certificate) steps.push_back(to_json(s));
    j["certificate"] = steps;
    for (int i = 0; i < 3; ++i) {
        j["picture_verdicts"].push_back(to_string(report.picture_verdicts[i]));
        j["instance_verdicts"].push_back(to_string(report.instance_verdicts[i]));
    }
    j["notes"] = report.notes;
    j["depth"] = report.depth;
    j["trend_threshold"] = report.policy.threshold;
    if (report.traces_computed) {
        for (int i = 0; i < 3; ++i) {
            j["final_sums"].push_back(format_double(report.final_sums[i]));
            j["empirical_tags"].push_back(to_string(report.empirical_tags[i]));
        }
    }
    return j;
}

json to_json(const TwoSeriesResult& result) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["chosen_set"] = result.chosen.describe();
    j["verdicts"] = {to_string(result.verdicts[0]), to_string(result.verdicts[1])};
    json steps = json::array();
    for (const auto& s : result.certificate) steps.push_back(to_json(s));
    j["certificate"] = steps;
    return j;
}

json to_json(const std::vector<fn32::ClassInfo>& classes) {
    json j;
    j["schema_version"] = kSchemaVersion;
    json arr = json::array();
    std::uint64_t total = 0;
    for (const auto& c : classes) {
        json e;
        json members = json::array();
        for (const auto& f : c.representative.members()) members.push_back(f.to_string());
        e["members"] = members;
        e["type"] = to_string(c.type);
        e["orbit_size"] = c.orbit_size;
        arr.push_back(e);
        total += c.orbit_size;
    }
    j["classes"] = arr;
    j["qualifying_families"] = total;
    return j;
}

json to_json(const cx::OscillationReport& report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["series"] = report.series;
    j["threshold"] = to_string(report.threshold);
    json sums = json::array();
    for (const auto& s : report.boundary_sums) sums.push_back(to_string(s));
    j["boundary_sums"] = sums;
    json crossings = json::array();
    for (const auto& c : report.crossings) {
        json e;
        e["block"] = c.block;
        e["boundary_sum"] = to_string(c.boundary_sum);
        e["threshold"] = to_string(c.threshold);
        e["direction"] = c.upward ? "up" : "down";
        crossings.push_back(e);
    }
    j["crossings"] = crossings;
    return j;
}

void write_trace_csv(std::ostream& out, const PartialSumTrace& trace, const TermStream& stream,
                     bool checkpoints_only) {
    out << "j,in_A,term,S\n";
    auto row = [&](u64 j) {
        out << j << "," << (trace.in_set(j) ? 1 : 0) << ","
            << format_double(stream.term_d(j)) << "," << format_double(trace.sum_at(j))
            << "\n";
    };
    if (checkpoints_only) {
        for (u64 c : TrendPolicy::decade_checkpoints(trace.depth())) row(c);
    } else {
        for (u64 j = 1; j <= trace.depth(); ++j) row(j);
    }
}

void write_oscillation_csv(std::ostream& out, const cx::OscillationReport& report) {
    out << "block,boundary_sum,boundary_sum_decimal\n";
    for (std::size_t m = 0; m < report.boundary_sums.size(); ++m) {
        const BigRat& s = report.boundary_sums[m];
        out << (m + 1) << "," << to_string(s) << ","
            << format_double(static_cast<double>(s)) << "\n";
    }
}

}  // namespace subseries
