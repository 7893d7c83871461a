#include <doctest.h>

#include "common/errors.hpp"
#include "domain/cohort_json.hpp"
#include "domain/types.hpp"

using namespace ppkex;

TEST_CASE("blood group encoding carries the antigen bits") {
  CHECK(domain::encode_blood_group(domain::BloodGroup::O) == 0);
  CHECK(domain::encode_blood_group(domain::BloodGroup::A) == 1);
  CHECK(domain::encode_blood_group(domain::BloodGroup::B) == 2);
  CHECK(domain::encode_blood_group(domain::BloodGroup::AB) == 3);

  for (const char* label : {"O", "A", "B", "AB"}) {
    CHECK(domain::blood_group_label(domain::parse_blood_group(label)) == label);
  }
  CHECK_THROWS_AS(domain::parse_blood_group("C"), ValidationError);
}

TEST_CASE("age groups split at the senior boundary") {
  CHECK(domain::encode_age_group(domain::kSeniorAgeYears - 1) == 0);
  CHECK(domain::encode_age_group(domain::kSeniorAgeYears) == 1);
  CHECK(domain::encode_age_group(18) == 0);
  CHECK(domain::encode_age_group(90) == 1);
}

TEST_CASE("sex labels round-trip") {
  CHECK(domain::parse_sex("F") == 1);
  CHECK(domain::parse_sex("M") == 0);
  CHECK(domain::sex_label(1) == "F");
  CHECK(domain::sex_label(0) == "M");
  CHECK_THROWS_AS(domain::parse_sex("X"), ValidationError);
}

TEST_CASE("public parameter validation") {
  domain::PublicParams p;
  p.n_pairs = 8;
  CHECK(domain::validate_params(p).empty());

  p.n_pairs = 1;
  CHECK_FALSE(domain::validate_params(p).empty());
  p.n_pairs = 65;
  CHECK_FALSE(domain::validate_params(p).empty());
  p.n_pairs = 64;
  CHECK(domain::validate_params(p).empty());

  p.cycle_len = 1;
  CHECK_FALSE(domain::validate_params(p).empty());
  p.cycle_len = 5;
  CHECK_FALSE(domain::validate_params(p).empty());
  p.cycle_len = 3;
  CHECK(domain::validate_params(p).empty());

  p.hla_count = 49;
  CHECK_FALSE(domain::validate_params(p).empty());
  p.hla_count = domain::kHlaCount;
  p.ring_bits = 64;
  CHECK_FALSE(domain::validate_params(p).empty());
}

TEST_CASE("criteria weights validation keeps edge sums inside the ring headroom") {
  domain::CriteriaWeights cw;
  CHECK(domain::validate_weights(cw).empty());
  cw.w_hla = 1u << 23;
  CHECK_FALSE(domain::validate_weights(cw).empty());
}

TEST_CASE("pair validation") {
  domain::PairRecord rec;
  rec.donor.age_years = 30;
  rec.donor.weight_kg = 70;
  rec.recipient.age_years = 40;
  rec.recipient.weight_kg = 60;
  CHECK(domain::validate_pair(rec).empty());

  rec.donor.weight_kg = domain::kWeightKgBound;
  CHECK_FALSE(domain::validate_pair(rec).empty());
  rec.donor.weight_kg = 70;
  rec.recipient.age_years = -3;
  CHECK_FALSE(domain::validate_pair(rec).empty());
}

TEST_CASE("cohort json round-trips and reports the offending pair") {
  domain::Cohort cohort(2);
  cohort[0].donor.hla[3] = true;
  cohort[0].donor.bg = domain::BloodGroup::A;
  cohort[0].donor.age_years = 61;
  cohort[0].donor.sex = 1;
  cohort[0].donor.weight_kg = 82;
  cohort[0].recipient.ahla[3] = true;
  cohort[0].recipient.hla[7] = true;
  cohort[0].recipient.age_years = 44;
  cohort[0].recipient.weight_kg = 70;
  cohort[1].donor.age_years = 30;
  cohort[1].donor.weight_kg = 90;
  cohort[1].recipient.age_years = 30;
  cohort[1].recipient.weight_kg = 55;

  const auto doc = domain::cohort_to_json(cohort);
  const auto back = domain::cohort_from_json(doc);
  REQUIRE(back.size() == 2);
  CHECK(back[0].donor.hla == cohort[0].donor.hla);
  CHECK(back[0].recipient.ahla == cohort[0].recipient.ahla);
  CHECK(back[0].donor.bg == domain::BloodGroup::A);
  CHECK(back[0].donor.sex == 1);
  CHECK(back[1].recipient.weight_kg == 55);

  auto broken = doc;
  broken["pairs"][1]["donor"]["weight_kg"] = 1u << 20;
  try {
    domain::cohort_from_json(broken);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("pairs[1]") != std::string::npos);
  }
}

TEST_CASE("weights json applies partial overrides") {
  const auto cw = domain::weights_from_json(
      nlohmann::json{{"criteria", {{"hla", 7}}}, {"classes", {{"A", 5}}}});
  CHECK(cw.w_hla == 7);
  CHECK(cw.w_abo == 3);
  CHECK(cw.class_a == 5);
  const auto round = domain::weights_from_json(domain::weights_to_json(cw));
  CHECK(round == cw);

  // The class grades must stay strictly ordered.
  CHECK_THROWS_AS(domain::weights_from_json(nlohmann::json{{"classes", {{"C", 0}}}}),
                  ValidationError);
}
