#pragma once

#include <span>
#include <vector>

namespace mhd1d {

/// Solves a tridiagonal system with the Thomas algorithm.
/// lower[0] and upper[n-1] are ignored. Requires a nonsingular system that
/// needs no pivoting (diagonally dominant in every use here).
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace mhd1d
