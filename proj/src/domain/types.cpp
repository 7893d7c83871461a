#include "domain/types.hpp"

#include "common/errors.hpp"

namespace ppkex::domain {

std::uint8_t encode_blood_group(BloodGroup bg) {
  return static_cast<std::uint8_t>(bg);
}

BloodGroup parse_blood_group(const std::string& label) {
  if (label == "O") return BloodGroup::O;
  if (label == "A") return BloodGroup::A;
  if (label == "B") return BloodGroup::B;
  if (label == "AB") return BloodGroup::AB;
  throw ValidationError("unknown blood group label: " + label);
}

std::string blood_group_label(BloodGroup bg) {
  switch (bg) {
    case BloodGroup::O:
      return "O";
    case BloodGroup::A:
      return "A";
    case BloodGroup::B:
      return "B";
    case BloodGroup::AB:
      return "AB";
  }
  throw ValidationError("blood group code out of range");
}

std::uint8_t parse_sex(const std::string& label) {
  if (label == "M") return 0;
  if (label == "F") return 1;
  throw ValidationError("unknown sex label: " + label + " (expected M or F)");
}

std::string sex_label(std::uint8_t bit) {
  return bit ? "F" : "M";
}

std::uint8_t encode_age_group(int age_years) {
  return age_years >= kSeniorAgeYears ? 1 : 0;
}

namespace {

void check_age(std::vector<std::string>& out, const char* who, int age) {
  if (age < 0 || age > 130) {
    out.push_back(std::string(who) + " age out of range: " + std::to_string(age));
  }
}

void check_weight(std::vector<std::string>& out, const char* who, std::uint32_t w) {
  if (w == 0 || w >= kWeightKgBound) {
    out.push_back(std::string(who) + " weight out of range: " + std::to_string(w));
  }
}

}  // namespace

std::vector<std::string> validate_pair(const PairRecord& pair) {
  std::vector<std::string> out;
  check_age(out, "donor", pair.donor.age_years);
  check_age(out, "recipient", pair.recipient.age_years);
  check_weight(out, "donor", pair.donor.weight_kg);
  check_weight(out, "recipient", pair.recipient.weight_kg);
  if (pair.donor.sex > 1) out.push_back("donor sex bit out of range");
  if (pair.recipient.sex > 1) out.push_back("recipient sex bit out of range");
  return out;
}

std::vector<std::string> validate_weights(const CriteriaWeights& cw) {
  std::vector<std::string> out;
  if (!(cw.class_a > cw.class_b && cw.class_b > cw.class_c && cw.class_c > 0)) {
    out.push_back("class weights must satisfy A > B > C > 0");
  }
  // Largest possible edge weight: base 1 plus every criterion at class A.
  std::uint64_t wsum = std::uint64_t(cw.w_hla) + cw.w_abo + cw.w_age + cw.w_sex + cw.w_weight;
  std::uint64_t max_edge = 1 + wsum * cw.class_a;
  if (max_edge >= kEdgeWeightBound) {
    out.push_back("maximum edge weight " + std::to_string(max_edge) +
                  " exceeds bound " + std::to_string(kEdgeWeightBound));
  }
  return out;
}

std::vector<std::string> validate_params(const PublicParams& params) {
  std::vector<std::string> out;
  if (params.n_pairs < 2) out.push_back("need at least 2 pairs");
  // 64^4 closed walks still fit the 32-bit ring, larger cohorts would not.
  if (params.n_pairs > 64) out.push_back("at most 64 pairs supported");
  if (params.cycle_len < 2 || params.cycle_len > 4) {
    out.push_back("cycle length must be in [2,4]");
  }
  if (params.hla_count != kHlaCount) {
    out.push_back("hla_count must be " + std::to_string(kHlaCount));
  }
  if (params.ring_bits != 32) out.push_back("ring_bits must be 32");
  return out;
}

}  // namespace ppkex::domain
