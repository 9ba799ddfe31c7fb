#pragma once

#include <stdexcept>
#include <string>

namespace subseries {

// A verdict request the oracle cannot answer from declarations and its
// propagation rules. The caller must supply annotations or accept Unknown.
struct UnresolvableVerdict : std::runtime_error {
    explicit UnresolvableVerdict(const std::string& what) : std::runtime_error(what) {}
};

// A construction ran past its configured depth cap before finishing
// (e.g. a block cutpoint was not reached below the cap).
struct DepthExhausted : std::runtime_error {
    explicit DepthExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Declared verdicts of an instance contradict a structural fact they are
// required to satisfy (fullness, the two-series claim, a missing role cell).
struct InstanceContradiction : std::runtime_error {
    explicit InstanceContradiction(const std::string& what) : std::runtime_error(what) {}
};

// An operation's stated precondition failed on concrete data.
struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subseries
