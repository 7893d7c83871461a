#pragma once

#include <string>

#include <json.hpp>

#include "domain/types.hpp"

namespace ppkex::domain {

// Cohort files look like:
//   {"pairs": [{"donor": {"hla": [50 bools], "bg": "O|A|B|AB",
//               "age": years, "sex": "M|F", "weight_kg": int},
//               "recipient": {"ahla": [...], "hla": [...], ...}}, ...]}
// Parsing throws ValidationError with the offending pair index.
Cohort cohort_from_json(const nlohmann::json& doc);
nlohmann::json cohort_to_json(const Cohort& cohort);

Cohort load_cohort_file(const std::string& path);
void save_cohort_file(const std::string& path, const Cohort& cohort);

// Weights files: {"criteria": {"hla": 4, "abo": 3, "age": 1, "sex": 1,
//                 "weight": 1}, "classes": {"A": 3, "B": 2, "C": 1}}
// Missing keys fall back to the defaults in CriteriaWeights.
CriteriaWeights weights_from_json(const nlohmann::json& doc);
nlohmann::json weights_to_json(const CriteriaWeights& cw);
CriteriaWeights load_weights_file(const std::string& path);

}  // namespace ppkex::domain
