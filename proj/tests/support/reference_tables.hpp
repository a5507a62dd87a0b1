#pragma once

#include <array>
#include <string_view>

// Published MAP columns and printed percentage deltas of the few-shot result
// tables, in report topic order.
namespace reference {

inline constexpr std::array<std::string_view, 14> kTopics = {
    "CT20-AR-01", "CT20-AR-02", "CT20-AR-05", "CT20-AR-08", "CT20-AR-10", "CT20-AR-12", "CT20-AR-14",
    "CT20-AR-19", "CT20-AR-23", "CT20-AR-27", "CT20-AR-30", "COVID-19",   "CT21-AR-01", "CT21-AR-02"};

struct AugmentRow {
  double zero_shot;
  double bt;
  int bt_delta;
  double cwe;
  int cwe_delta;
  double txtgen;
  int txtgen_delta;
};

inline constexpr std::array<AugmentRow, 14> kAugmentTable = {{
    {0.6408, 0.6664, 3, 0.659, 2, 0.6896, 5},
    {0.6473, 0.7153, 7, 0.7305, 8, 0.7245, 8},
    {0.5983, 0.5992, 0, 0.5865, -1, 0.5845, -1},
    {0.2468, 0.3707, 12, 0.4868, 24, 0.3751, 13},
    {0.3999, 0.5288, 13, 0.4252, 3, 0.4406, 4},
    {0.5637, 0.8345, 27, 0.8448, 28, 0.8623, 30},
    {0.6563, 0.7342, 8, 0.7729, 12, 0.7264, 7},
    {0.7538, 0.8444, 9, 0.863, 11, 0.8611, 11},
    {0.2644, 0.3063, 4, 0.2616, 0, 0.2628, 0},
    {0.5647, 0.6248, 6, 0.6222, 6, 0.6077, 4},
    {0.4172, 0.6091, 19, 0.6264, 21, 0.5797, 16},
    {0.6826, 0.7151, 3, 0.6988, 2, 0.7001, 2},
    {0.5429, 0.7382, 20, 0.7884, 25, 0.7814, 24},
    {0.6708, 0.7865, 12, 0.8438, 17, 0.7721, 10},
}};
inline constexpr std::array<int, 3> kAugmentAverageDeltas = {10, 11, 9};

struct AblationRow {
  double no_da;
  double cwe;
  int delta;
};

inline constexpr std::array<AblationRow, 14> kAblationTable = {{
    {0.6883, 0.6590, -3},
    {0.6935, 0.7305, 4},
    {0.6002, 0.5865, -1},
    {0.3796, 0.4868, 11},
    {0.4660, 0.4252, -4},
    {0.8467, 0.8448, 0},
    {0.7354, 0.7729, 4},
    {0.8497, 0.8630, 1},
    {0.3723, 0.2616, -11},
    {0.6403, 0.6222, -2},
    {0.5730, 0.6264, 5},
    {0.7101, 0.6988, -2},
    {0.6471, 0.7884, 14},
    {0.8554, 0.8438, -1},
}};
inline constexpr int kAblationAverageDelta = 1;

}  // namespace reference
