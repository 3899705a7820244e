#pragma once

#include <iosfwd>
#include <string>

#include "verum/clinch.hpp"
#include "verum/oracle.hpp"
#include "verum/types.hpp"

namespace verum::io {

// Versioned plain-text instance format ("verum-instance 1"): header with
// n/C/seed, node positions, adjacency list, per-node availability bitstrings,
// per-node valuation lists, optional sharing block. Writer output is
// canonical (byte-stable for a given instance).
std::string write_instance(const Instance& inst);
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

// Auction result ("verum-result 1"): winners with counts, payments and
// concrete channels, per-channel user lists, the clinch ledger.
std::string write_result(const Instance& inst, const Outcome& outcome,
                         const std::string& mechanism);

// Oracle report ("verum-oracle-result 1"); the header records how candidate
// allocations were priced.
std::string write_oracle_result(const Instance& inst, const OracleResult& result,
                                const std::string& mode);

// Scenario config: `key = value` lines, keys matching the ScenarioConfig
// field names (valuation_range takes two integers). '#' starts a comment.
ScenarioConfig read_scenario_config(std::istream& in);
ScenarioConfig read_scenario_config_file(const std::string& path);
std::string write_scenario_config(const ScenarioConfig& cfg);

// Applies one `key = value` pair to a config; false when the key is not a
// ScenarioConfig field (so embedding formats can layer their own keys on
// top), throws on a bad value.
bool apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& value);

}  // namespace verum::io
