/* common.hpp — shared error taxonomy and small utilities.
 *
 * Error categories map onto process exit codes in the CLI:
 *   ParameterError -> exit 2 (invalid arguments, contract violations)
 *   BudgetError    -> exit 3 (search budgets exhausted, infeasible radii)
 * Anything else is a plain std::runtime_error and indicates a bug or a
 * numerically hopeless input.
 */
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace svp {

/// Invalid user-supplied parameter or violated input contract
/// (rank-deficient basis, delta out of range, mismatched lengths, ...).
class ParameterError : public std::invalid_argument {
public:
  explicit ParameterError(const std::string &msg) : std::invalid_argument(msg) {}
};

/// A configured resource budget was exhausted (enumeration node budget,
/// coefficient box too large, radius escalation failed).
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Floating-point machinery lost too much precision to continue
/// (e.g. a Gram-Schmidt norm collapsed relative to its row).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace svp
