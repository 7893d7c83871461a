#pragma once

#include <string>

#include <json.hpp>

#include "kep/protocols.hpp"
#include "mpc/ledger.hpp"

namespace ppkex::kep {

// Agreed run result. Contains only values both parties compute
// identically (no timings, no per-party reveal accounting), so the
// serialized document is byte-equal on both sides.
nlohmann::json result_json(const PipelineConfig& cfg, const PipelineOutcome& outcome,
                           const mpc::PhaseLedger& ledger);

// Per-party cost report: everything in the result plus timings, reveal
// and input traffic, and the sharing domains each phase ran in.
nlohmann::json ledger_json(int party, const PipelineConfig& cfg, const PipelineOutcome& outcome,
                           const mpc::PhaseLedger& ledger);

nlohmann::json params_json(const domain::PublicParams& params);
nlohmann::json weights_json(const domain::CriteriaWeights& weights);
domain::PublicParams params_from_json(const nlohmann::json& j);
domain::CriteriaWeights weights_from_json(const nlohmann::json& j);

// Canonical byte form used for the handshake comparison and on disk.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace ppkex::kep
