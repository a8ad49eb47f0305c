#pragma once

namespace confdyn {

// Exit taxonomy: 0 computed and all checks passed; 2 computed with a negative
// verdict (obstruction found / constraint violated — a successful negative
// result); 3 usage error; 4 numerical failure (small denominator, no
// convergence, precision exhausted, failed verification, ...).
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegativeVerdict = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitNumerical = 4;

int run_cli(int argc, const char* const* argv);

}  // namespace confdyn
