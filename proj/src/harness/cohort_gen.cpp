#include "harness/harness.hpp"

#include <random>

#include "common/errors.hpp"
#include "oracle/oracle.hpp"

namespace ppkex::harness {

namespace {

domain::HlaVector draw_hla(std::mt19937_64& rng, double rate) {
  std::bernoulli_distribution bit(rate);
  domain::HlaVector v;
  for (std::size_t i = 0; i < domain::kHlaCount; ++i) v[i] = bit(rng);
  return v;
}

}  // namespace

domain::Cohort generate_cohort(const CohortGenConfig& cfg) {
  if (cfg.weight_lo_kg > cfg.weight_hi_kg || cfg.weight_hi_kg >= domain::kWeightKgBound) {
    throw ValidationError("weight range is invalid");
  }
  std::mt19937_64 rng(cfg.seed);
  std::bernoulli_distribution senior(cfg.senior_rate), female(cfg.female_rate);
  std::discrete_distribution<int> blood({44, 42, 10, 4});
  std::uniform_int_distribution<std::uint32_t> weight(cfg.weight_lo_kg, cfg.weight_hi_kg);
  std::uniform_int_distribution<int> junior_age(18, domain::kSeniorAgeYears - 1);
  std::uniform_int_distribution<int> senior_age(domain::kSeniorAgeYears, 79);
  std::uniform_int_distribution<std::size_t> slot(0, domain::kHlaCount - 1);

  domain::Cohort cohort(cfg.n_pairs);
  for (auto& pair : cohort) {
    pair.donor.hla = draw_hla(rng, cfg.antigen_rate);
    pair.donor.bg = domain::BloodGroup(blood(rng));
    pair.donor.age_years = senior(rng) ? senior_age(rng) : junior_age(rng);
    pair.donor.sex = female(rng);
    pair.donor.weight_kg = weight(rng);

    pair.recipient.hla = draw_hla(rng, cfg.antigen_rate);
    pair.recipient.ahla = draw_hla(rng, cfg.antibody_rate);
    pair.recipient.bg = domain::BloodGroup(blood(rng));
    pair.recipient.age_years = senior(rng) ? senior_age(rng) : junior_age(rng);
    pair.recipient.sex = female(rng);
    pair.recipient.weight_kg = weight(rng);

    // Pairs join an exchange because they are incompatible with each
    // other: force a positive own-pair crossmatch.
    if (oracle::crossmatch_ok(pair.donor.hla, pair.recipient.ahla)) {
      if (pair.donor.hla.none()) pair.donor.hla[slot(rng)] = true;
      std::size_t hit = slot(rng);
      while (!pair.donor.hla[hit]) hit = (hit + 1) % domain::kHlaCount;
      pair.recipient.ahla[hit] = true;
    }
  }
  return cohort;
}

CohortGenConfig gen_config_from_json(const nlohmann::json& doc) {
  CohortGenConfig cfg;
  if (doc.contains("n_pairs")) cfg.n_pairs = doc.at("n_pairs").get<std::uint32_t>();
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("antigen_rate")) cfg.antigen_rate = doc.at("antigen_rate").get<double>();
  if (doc.contains("antibody_rate")) cfg.antibody_rate = doc.at("antibody_rate").get<double>();
  if (doc.contains("senior_rate")) cfg.senior_rate = doc.at("senior_rate").get<double>();
  if (doc.contains("female_rate")) cfg.female_rate = doc.at("female_rate").get<double>();
  if (doc.contains("weight_lo_kg")) cfg.weight_lo_kg = doc.at("weight_lo_kg").get<std::uint32_t>();
  if (doc.contains("weight_hi_kg")) cfg.weight_hi_kg = doc.at("weight_hi_kg").get<std::uint32_t>();
  return cfg;
}

}  // namespace ppkex::harness
