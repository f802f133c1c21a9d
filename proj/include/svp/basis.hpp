/* basis.hpp — lattice bases as integer row matrices, plus text I/O.
 *
 * A Basis is an n x d integer matrix whose rows generate the lattice
 * (n = rank, d = ambient dimension, n <= d, rows linearly independent).
 * Rational lattices that arise internally (duals, projected blocks) are
 * carried as ScaledBasis = integer basis / one global denominator; the
 * denominator is global because scaling individual rows would change the
 * lattice, not just its representation.
 *
 * Text format (one basis per file, whitespace tolerant):
 *   [[1 2 3][4 5 6]]
 */
#pragma once

#include <iosfwd>
#include <string>

#include "svp/matrix.hpp"

namespace svp {

struct Basis {
  IntMat rows; // n x d, row vectors generate the lattice

  Basis() = default;
  explicit Basis(IntMat m) : rows(std::move(m)) {}
  Basis(std::size_t n, std::size_t d) : rows(n, d) {}

  std::size_t rank() const { return rows.rows(); }
  std::size_t dim() const { return rows.cols(); }

  bool operator==(const Basis &o) const { return rows == o.rows; }
};

/// Exact rational basis rows / denom (denom >= 1, shared by all rows).
struct ScaledBasis {
  Basis b;
  Int denom = 1;

  RatMat to_rat_rows() const {
    RatMat r = to_rat(b.rows);
    if (denom != 1)
      for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
          r(i, j) /= denom;
    return r;
  }
};

/// Render in the bracketed row format shown above (exact integers).
std::string basis_to_string(const Basis &b);

/// Parse the bracketed row format.  Accepts arbitrary whitespace and
/// optional commas between entries; throws ParameterError on ragged rows
/// or malformed input.
Basis basis_from_string(const std::string &text);

/// File wrappers around the string form.
void write_basis_file(const std::string &path, const Basis &b);
Basis read_basis_file(const std::string &path);

/// Convert exact rational rows to a ScaledBasis with the smallest global
/// denominator.
ScaledBasis scaled_from_rat(const RatMat &rows);

} // namespace svp
