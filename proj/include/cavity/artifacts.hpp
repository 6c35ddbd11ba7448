#pragma once

#include <map>
#include <string>

#include "cavity/anneal.hpp"
#include "cavity/mattis.hpp"
#include "cavity/oracle.hpp"
#include "cavity/qubo.hpp"
#include "cavity/verify.hpp"

namespace cavity {

inline constexpr const char* kToolName = "cavityc";
inline constexpr const char* kToolVersion = "0.1.0";

/// Flags echoed into every artifact, with an FNV-1a hash for reproducibility
/// audits.
using RunConfig = std::map<std::string, std::string>;
std::string config_hash(const RunConfig& config);

// Artifact writers; each returns the serialized JSON text (stable key order,
// floats at 17 significant digits).
std::string encoding_to_json(const SubsetSumInstance& inst, const RunConfig& config);
SubsetSumInstance encoding_from_json(const std::string& text);

std::string compiled_qubo_to_json(const PenalizedObjective& p, const RunConfig& config);
PenalizedObjective compiled_qubo_from_json(const std::string& text);

std::string formulation_to_json(const QuboFormulation& f, const RunConfig& config);
QuboFormulation formulation_from_json(const std::string& text);

std::string mattis_to_json(const MattisProgram& p, const RunConfig& config);
MattisProgram mattis_from_json(const std::string& text);

std::string oracle_report_to_json(const SubsetSumInstance& inst, const OracleResult& r,
                                  const RunConfig& config);
std::string decoded_to_json(const DecodedSolution& sol, const RunConfig& config);
std::string qubo_decoded_to_json(const QuboDecoded& sol, const RunConfig& config);
std::string anneal_report_to_json(const AnnealResult& r, bool certified, const RunConfig& config);
std::string equivalence_report_to_json(const EquivalenceReport& r, const RunConfig& config);

/// Temp-file-plus-rename write so readers never observe a partial artifact.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace cavity
