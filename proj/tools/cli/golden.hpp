#pragma once

#include <array>
#include <string_view>

namespace ramanujan::cli {

// Worked example q = 2, d = 3, basis {1, v, v^2} with v^3 = v + 1, beta = 1 + v.
// 3x3 rows are b_u numerators over 1 + y (ascending powers); 9x9 rows are the
// F_2 matrices A and B of the conjugation action A + B/y.
struct GoldenRow {
  std::string_view three;
  std::string_view nine_a;
  std::string_view nine_b;
};

inline constexpr std::string_view kGoldenOnePlusY = "1+x+x^3";
inline constexpr std::string_view kGoldenZ = "1+x, x, x; x, x, 1; 0, 1+x, 1";

inline constexpr std::array<GoldenRow, 7> kGoldenTable{{
    {"x+x^3, x^2, x+x^2; x, x^3, 1+x+x^2; x+x^2, 1+x^2, 1+x^3",
     "100000000;010001001;001011011;000100000;000010001;000001011;000000100;000000010;000000001",
     "000000000;001001001;011011011;000000000;001001001;011011011;000000000;001001001;011011011"},
    {"1+x+x^2+x^3, x+x^2, 1+x^2; 1+x, x^2+x^3, 1; 1+x^2, x, x^3",
     "100000000;010010011;001111100;000100011;000010100;000001000;000000100;000000010;000000001",
     "000000000;001010011;011111100;001010011;011111100;000000000;010101111;001010011;010101111"},
    {"1+x^2+x^3, 1+x^2, x; 1+x+x^2, x+x^3, x^2; x, 1+x, x^2+x^3",
     "100000000;010101100;001110101;000100001;000010000;000001100;000000100;000000010;000000001",
     "000000000;001101100;011110101;010011001;000000000;001101100;011110101;011110101;001101100"},
    {"x+x^2+x^3, x, 1+x; 1, 1+x+x^2+x^3, x+x^2; 1+x, 1+x+x^2, x+x^3",
     "100000000;010011101;001100110;000100011;000010101;000001011;000000100;000000010;000000001",
     "000000000;001011101;011100110;010111011;001011101;010111011;010111011;000000000;001011101"},
    {"1+x^3, 1+x, 1+x+x^2; x^2, 1+x^2+x^3, 1+x^2; 1+x+x^2, 1, 1+x+x^2+x^3",
     "100000000;010111110;001001010;000100010;000010100;000001100;000000100;000000010;000000001",
     "000000000;001111110;011001010;011001010;010110100;010110100;001111110;010110100;011001010"},
    {"x^3, 1+x+x^2, 1; x+x^2, x+x^2+x^3, x; 1, x^2, 1+x^2+x^3",
     "100000000;010110010;001010111;000100010;000010101;000001111;000000100;000000010;000000001",
     "000000000;001110010;011010111;001110010;010100101;011010111;001110010;011010111;000000000"},
    {"x^2+x^3, 1, x^2; 1+x^2, 1+x^3, 1+x; x^2, x+x^2, x+x^2+x^3",
     "100000000;010100111;001101001;000100001;000010001;000001111;000000100;000000010;000000001",
     "000000000;001100111;011101001;011101001;011101001;001100111;011101001;010001110;010001110"},
}};

}  // namespace ramanujan::cli
