// JSON and CSV views of the library's result types. Complex numbers render
// as [re, im] pairs; mill spec files are flat objects keyed by amplitude
// name, e.g. {"a_h": [1, 0], ...} with missing keys defaulting to 0.
#pragma once

#include <string>

#include "json.hpp"

#include "biphoton/channels.hpp"
#include "biphoton/epr.hpp"
#include "biphoton/measurement.hpp"
#include "biphoton/nogo.hpp"

namespace biphoton {

void to_json(nlohmann::json& j, const MarriageMillSpec& spec);
void from_json(const nlohmann::json& j, MarriageMillSpec& spec);

// Reads a mill spec file; throws std::runtime_error with the offending path
// on IO or parse failure.
MarriageMillSpec load_mill_spec(const std::string& path);

void to_json(nlohmann::json& j, const OutcomeStats& stats);
void to_json(nlohmann::json& j, const OutcomeCounts& counts);
void to_json(nlohmann::json& j, const InputResidual& r);
void to_json(nlohmann::json& j, const ConstraintSummary& s);
void to_json(nlohmann::json& j, const ResidualReport& r);
void to_json(nlohmann::json& j, const ConstraintFamily& f);
void to_json(nlohmann::json& j, const FatLightCertificate& c);
void to_json(nlohmann::json& j, const Ensemble& e);
void to_json(nlohmann::json& j, const NullBand& band);
void to_json(nlohmann::json& j, const ArmResult& arm);
void to_json(nlohmann::json& j, const ProtocolRecord& rec);

// One CSV line, no trailing newline. Headers list the column names the row
// renderers emit.
std::string stats_csv_header(bool with_counts);
std::string stats_csv_row(const std::string& kind, const OutcomeStats& exact,
                          const std::array<long, 3>& ratio);
std::string stats_csv_row(const std::string& kind, const OutcomeStats& exact,
                          const std::array<long, 3>& ratio,
                          const OutcomeCounts& sampled);

}  // namespace biphoton
