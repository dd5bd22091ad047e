#pragma once

namespace hemo::units {

inline constexpr double kPaPerMmHg = 133.322387415;
inline constexpr double kPaPerMPa = 1.0e6;
inline constexpr double kPaSPerKPaS = 1.0e3;
inline constexpr double kM2PerMm2 = 1.0e-6;
inline constexpr double kM2PerCm2 = 1.0e-4;

constexpr double mmhg(double v) { return v * kPaPerMmHg; }
constexpr double to_mmhg(double pa) { return pa / kPaPerMmHg; }
constexpr double mpa(double v) { return v * kPaPerMPa; }
constexpr double kpa_s(double v) { return v * kPaSPerKPaS; }
constexpr double mm2(double v) { return v * kM2PerMm2; }
constexpr double cm2(double v) { return v * kM2PerCm2; }

}  // namespace hemo::units
