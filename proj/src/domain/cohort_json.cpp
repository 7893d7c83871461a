#include "domain/cohort_json.hpp"

#include <fstream>

#include "common/errors.hpp"

namespace ppkex::domain {

using nlohmann::json;

namespace {

HlaVector hla_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != kHlaCount) {
    throw ValidationError(where + ": expected an array of " +
                          std::to_string(kHlaCount) + " booleans");
  }
  HlaVector v;
  for (std::size_t i = 0; i < kHlaCount; ++i) {
    const auto& b = arr[i];
    if (!b.is_boolean()) {
      throw ValidationError(where + "[" + std::to_string(i) + "]: expected a boolean");
    }
    v[i] = b.get<bool>();
  }
  return v;
}

json hla_to_json(const HlaVector& v) {
  json arr = json::array();
  for (std::size_t i = 0; i < kHlaCount; ++i) arr.push_back(bool(v[i]));
  return arr;
}

template <typename T>
T require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + key + "' has the wrong type");
  }
}

Donor donor_from_json(const json& obj, const std::string& where) {
  Donor d;
  d.hla = hla_from_json(require<json>(obj, "hla", where), where + ".hla");
  d.bg = parse_blood_group(require<std::string>(obj, "bg", where));
  d.age_years = require<int>(obj, "age", where);
  d.sex = parse_sex(require<std::string>(obj, "sex", where));
  d.weight_kg = require<std::uint32_t>(obj, "weight_kg", where);
  return d;
}

Recipient recipient_from_json(const json& obj, const std::string& where) {
  Recipient r;
  r.ahla = hla_from_json(require<json>(obj, "ahla", where), where + ".ahla");
  r.hla = hla_from_json(require<json>(obj, "hla", where), where + ".hla");
  r.bg = parse_blood_group(require<std::string>(obj, "bg", where));
  r.age_years = require<int>(obj, "age", where);
  r.sex = parse_sex(require<std::string>(obj, "sex", where));
  r.weight_kg = require<std::uint32_t>(obj, "weight_kg", where);
  return r;
}

}  // namespace

Cohort cohort_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw ValidationError("cohort document must be {\"pairs\": [...]}");
  }
  Cohort cohort;
  std::size_t idx = 0;
  for (const auto& entry : doc["pairs"]) {
    const std::string where = "pairs[" + std::to_string(idx) + "]";
    PairRecord rec;
    rec.donor = donor_from_json(require<json>(entry, "donor", where), where + ".donor");
    rec.recipient =
        recipient_from_json(require<json>(entry, "recipient", where), where + ".recipient");
    auto violations = validate_pair(rec);
    if (!violations.empty()) {
      throw ValidationError(where + ": " + violations.front());
    }
    cohort.push_back(std::move(rec));
    ++idx;
  }
  return cohort;
}

json cohort_to_json(const Cohort& cohort) {
  json pairs = json::array();
  for (const auto& rec : cohort) {
    json d{{"hla", hla_to_json(rec.donor.hla)},
           {"bg", blood_group_label(rec.donor.bg)},
           {"age", rec.donor.age_years},
           {"sex", sex_label(rec.donor.sex)},
           {"weight_kg", rec.donor.weight_kg}};
    json r{{"ahla", hla_to_json(rec.recipient.ahla)},
           {"hla", hla_to_json(rec.recipient.hla)},
           {"bg", blood_group_label(rec.recipient.bg)},
           {"age", rec.recipient.age_years},
           {"sex", sex_label(rec.recipient.sex)},
           {"weight_kg", rec.recipient.weight_kg}};
    pairs.push_back(json{{"donor", std::move(d)}, {"recipient", std::move(r)}});
  }
  return json{{"pairs", std::move(pairs)}};
}

Cohort load_cohort_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cohort file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("cohort file " + path + ": " + e.what());
  }
  return cohort_from_json(doc);
}

void save_cohort_file(const std::string& path, const Cohort& cohort) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write cohort file: " + path);
  out << cohort_to_json(cohort).dump(2) << '\n';
}

CriteriaWeights weights_from_json(const json& doc) {
  CriteriaWeights cw;
  if (doc.contains("criteria")) {
    const auto& c = doc["criteria"];
    if (c.contains("hla")) cw.w_hla = c["hla"].get<std::uint32_t>();
    if (c.contains("abo")) cw.w_abo = c["abo"].get<std::uint32_t>();
    if (c.contains("age")) cw.w_age = c["age"].get<std::uint32_t>();
    if (c.contains("sex")) cw.w_sex = c["sex"].get<std::uint32_t>();
    if (c.contains("weight")) cw.w_weight = c["weight"].get<std::uint32_t>();
  }
  if (doc.contains("classes")) {
    const auto& k = doc["classes"];
    if (k.contains("A")) cw.class_a = k["A"].get<std::uint32_t>();
    if (k.contains("B")) cw.class_b = k["B"].get<std::uint32_t>();
    if (k.contains("C")) cw.class_c = k["C"].get<std::uint32_t>();
  }
  auto violations = validate_weights(cw);
  if (!violations.empty()) throw ValidationError("weights: " + violations.front());
  return cw;
}

json weights_to_json(const CriteriaWeights& cw) {
  return json{{"criteria",
               {{"hla", cw.w_hla},
                {"abo", cw.w_abo},
                {"age", cw.w_age},
                {"sex", cw.w_sex},
                {"weight", cw.w_weight}}},
              {"classes", {{"A", cw.class_a}, {"B", cw.class_b}, {"C", cw.class_c}}}};
}

CriteriaWeights load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open weights file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("weights file " + path + ": " + e.what());
  }
  return weights_from_json(doc);
}

}  // namespace ppkex::domain
