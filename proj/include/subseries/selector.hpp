#pragma once

#include "subseries/balance.hpp"
#include "subseries/fn32.hpp"
#include "subseries/index_set.hpp"
#include "subseries/oracle.hpp"
#include "subseries/stream.hpp"
#include "subseries/trace.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subseries {

// One sub-claim of a selection argument: a subseries verdict together with
// the rule that produced it and the earlier steps it consumed.
struct CertStep {
    std::string claim;
    int coordinate = 0;  // picture coordinate (1-based), 0 when not verdict-shaped
    std::string set_desc;
    u64 set_fp = 0;
    Verdict verdict = Verdict::Unknown;
    std::string rule;
    std::vector<int> operands;
    bool numeric = false;  // rests on finite-prefix evidence
    std::optional<std::pair<std::uint8_t, int>> member;  // (function code, coordinate)
};

// Re-derive each step from its rule and operand verdicts. Returns false and
// fills `why` on the first step that does not re-validate.
bool validate_certificate(const std::vector<CertStep>& steps, std::string* why = nullptr);

enum class CaseTag : std::uint8_t { TotalFunction, Case1, Case2A, Case2B, Case2C };

std::string to_string(CaseTag t);

struct TwoSeriesResult {
    IndexSet chosen;
    std::array<Verdict, 2> verdicts;
    std::vector<CertStep> certificate;
};

// Pick a set sending both series to infinity: a single sign cell when one
// already works, otherwise the union of the two cells on which one of the
// streams keeps a single sign. Requires resolvable verdicts on all four
// cells; throws InstanceContradiction if they cannot be consistent.
TwoSeriesResult two_series_select(const SignPartition& cells,
                                  const std::vector<TermStream>& streams,
                                  VerdictOracle& oracle);

// The tame partition a case argument runs on, in picture coordinates.
struct LabeledPartition {
    std::map<char, IndexSet> parts;  // roles: F,G,H (Type 1) or E,F,G,H (Type 2)
    IndexSet junk = IndexSet::empty();
    char junk_into = 'F';
    std::map<char, std::array<Verdict, 3>> part_verdicts;  // picture-coordinate verdicts
};

LabeledPartition build_labeled_partition(const SignPartition& cells,
                                         const std::vector<TermStream>& streams,
                                         VerdictOracle& oracle, fn32::FamilyType type,
                                         const fn32::Symmetry& relabeling);

struct SelectorParams {
    u64 depth = 1000000;
    TrendPolicy policy;           // reporting policy for the final trace tags
    TrendPolicy dispatch_policy;  // sub-case dispatch on monotone sign parts
    unsigned split_blocks = 2;
    bool compute_traces = true;

    SelectorParams() {
        dispatch_policy.threshold = 1.0;
        dispatch_policy.margin = 0.25;
    }
};

struct CaseReport {
    std::string instance;
    fn32::FamilyType family_type = fn32::FamilyType::NotFullUnionClosed;
    CaseTag tag = CaseTag::TotalFunction;
    fn32::Symmetry relabeling;
    IndexSet chosen;
    std::vector<CertStep> certificate;
    std::array<Verdict, 3> picture_verdicts{};
    std::array<Verdict, 3> instance_verdicts{};
    std::vector<std::string> notes;
    u64 depth = 0;
    TrendPolicy policy;
    bool traces_computed = false;
    std::array<double, 3> final_sums{};
    std::array<Verdict, 3> empirical_tags{};
};

// The full case-driven three-series selection. The oracle must already hold
// the instance's declared verdicts (see catalog::declare_all).
CaseReport three_series_select(const Instance& instance, VerdictOracle& oracle,
                               const SelectorParams& params);

}  // namespace subseries
