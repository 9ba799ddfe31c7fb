#pragma once

#include "subseries/counterexample.hpp"
#include "subseries/oracle.hpp"
#include "subseries/stream.hpp"

#include <memory>
#include <string>
#include <vector>

namespace subseries::catalog {

// Built-in streams, addressable by CLI name:
//   altharm            (-1)^(n+1)/n
//   negaltharm         (-1)^n/n
//   intro1/2/3         the three-series mod-4 instance
//   type1a/b/c         synthetic mod-3 instance with a Type 1 profile family
//   type2a/b/c         synthetic mod-6 instance carrying both singleton profiles
//   cx1..cx4           the four-series block construction (paper recurrence,
//                      table sized to cover `depth_hint`)
TermStream stream_by_name(const std::string& name, u64 depth_hint = 2000000);

// Instances: "intro", "type1", "type2" (three series); "mirror", "tableau"
// (two series); "cx" (four series).
Instance instance_by_name(const std::string& name, u64 depth_hint = 2000000);

Instance cx_instance(cx::RecurrenceMode mode, int blocks);
Instance cx_instance_for_depth(cx::RecurrenceMode mode, u64 depth);

std::vector<std::string> stream_names();
std::vector<std::string> instance_names();

// Declare everything the instance axiomatizes: global verdicts, sign-cell
// verdicts, and parity/sign-part verdicts for the simple streams.
void declare_all(VerdictOracle& oracle, const Instance& instance, const SignPartition& cells);

// Parity declarations for a lone stream (odds / evens / sign-part exprs),
// used by the balance subcommands.
void declare_standalone(VerdictOracle& oracle, const TermStream& stream);

}  // namespace subseries::catalog
