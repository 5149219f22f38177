#pragma once

// Versioned JSON for search statistics and analysis reports.

#include <json.hpp>

#include "naeenum/analysis.hpp"
#include "naeenum/treesearch.hpp"

namespace naeenum {

inline constexpr int kStatsSchemaVersion = 1;

nlohmann::ordered_json stats_to_json(const SearchStats& s);
nlohmann::ordered_json exhaustive_to_json(const ExhaustiveReport& r);
nlohmann::ordered_json certificate_to_json(const NodeCertificate& c);
nlohmann::ordered_json claims_to_json(const ClaimReport& r);
nlohmann::ordered_json global_to_json(const GlobalCheck& g);
nlohmann::ordered_json psi_to_json(const PsiEstimate& p);
nlohmann::ordered_json invariants_to_json(const InvariantReport& r);

}  // namespace naeenum
