#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <string_view>

namespace ppkex::domain {

// Number of broad/split antigen slots every HLA bit vector carries.
inline constexpr std::size_t kHlaCount = 50;

using HlaVector = std::bitset<kHlaCount>;

// Split-antigen catalog: 13 HLA-A, 24 HLA-B, 8 HLA-DR, 5 HLA-DQ.
// Bit i of an HlaVector refers to hla_catalog()[i]. The same 50-slot
// catalog is used for donor antigens, recipient antibodies and both
// typing vectors, so mismatch counts and crossmatch checks share one
// index space.
inline const std::array<std::string_view, kHlaCount>& hla_catalog() {
  static const std::array<std::string_view, kHlaCount> cat = {
      // HLA-A
      "A23", "A24", "A25", "A26", "A29", "A31", "A32", "A33", "A34", "A66",
      "A68", "A69", "A74",
      // HLA-B
      "B38", "B39", "B44", "B45", "B49", "B50", "B51", "B52", "B54", "B55",
      "B56", "B57", "B58", "B60", "B61", "B62", "B63", "B64", "B65", "B71",
      "B72", "B75", "B76", "B77",
      // HLA-DR
      "DR11", "DR12", "DR13", "DR14", "DR15", "DR16", "DR17", "DR18",
      // HLA-DQ
      "DQ5", "DQ6", "DQ7", "DQ8", "DQ9"};
  return cat;
}

}  // namespace ppkex::domain
