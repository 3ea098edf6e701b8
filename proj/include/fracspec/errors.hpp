#pragma once

#include <stdexcept>

namespace fracspec {

// Error taxonomy shared with the CLI exit-code contract:
// config 2, numeric failure 3, resource budget 4, I/O 5.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitIo = 5;

}  // namespace fracspec
