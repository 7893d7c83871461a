#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "domain/hla.hpp"

namespace ppkex::domain {

enum class BloodGroup : std::uint8_t { O = 0, A = 1, B = 2, AB = 3 };

// Wire/circuit encoding: O=00, A=01, B=10, AB=11. Bit 0 is the A antigen,
// bit 1 the B antigen, which is what the ABO compatibility circuit relies on.
std::uint8_t encode_blood_group(BloodGroup bg);
BloodGroup parse_blood_group(const std::string& label);
std::string blood_group_label(BloodGroup bg);

// Sex bit: 1 = female, 0 = male.
std::uint8_t parse_sex(const std::string& label);
std::string sex_label(std::uint8_t bit);

// Age group bit: 0 = junior (< 55 years), 1 = senior (>= 55 years).
inline constexpr int kSeniorAgeYears = 55;
std::uint8_t encode_age_group(int age_years);

// Donor weights feed a 16-bit comparison circuit.
inline constexpr std::uint32_t kWeightKgBound = 1u << 16;

struct Donor {
  HlaVector hla;  // antigen profile; doubles as the typing vector
  BloodGroup bg = BloodGroup::O;
  int age_years = 0;
  std::uint8_t sex = 0;
  std::uint32_t weight_kg = 0;
};

struct Recipient {
  HlaVector ahla;  // antibody profile, checked against donor antigens
  HlaVector hla;   // typing vector, checked for mismatch count
  BloodGroup bg = BloodGroup::O;
  int age_years = 0;
  std::uint8_t sex = 0;
  std::uint32_t weight_kg = 0;
};

// One incompatible donor/recipient pair as submitted by a provider.
struct PairRecord {
  Donor donor;
  Recipient recipient;
};

using Cohort = std::vector<PairRecord>;

// Returns human-readable violations; empty means the record is usable.
std::vector<std::string> validate_pair(const PairRecord& pair);

// Scoring configuration. w_* scale the five criteria, class_* are the
// grade values each criterion maps onto.
struct CriteriaWeights {
  std::uint32_t w_hla = 4;
  std::uint32_t w_abo = 3;
  std::uint32_t w_age = 1;
  std::uint32_t w_sex = 1;
  std::uint32_t w_weight = 1;
  std::uint32_t class_a = 3;
  std::uint32_t class_b = 2;
  std::uint32_t class_c = 1;

  bool operator==(const CriteriaWeights&) const = default;
};

// Edge weights must stay below 2^24 so cycle sums keep clear headroom
// in the 32-bit ring.
inline constexpr std::uint64_t kEdgeWeightBound = 1ull << 24;

std::vector<std::string> validate_weights(const CriteriaWeights& cw);

// Values both parties must agree on before any share moves.
struct PublicParams {
  std::uint32_t n_pairs = 0;
  std::uint32_t cycle_len = 2;
  std::uint32_t hla_count = kHlaCount;
  std::uint32_t ring_bits = 32;

  bool operator==(const PublicParams&) const = default;
};

std::vector<std::string> validate_params(const PublicParams& params);

}  // namespace ppkex::domain
