#pragma once

#include <vector>

namespace squeeze::detail {

struct TridiagonalEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, n x n
};

/// Full eigendecomposition of the symmetric tridiagonal matrix with diagonal
/// d and off-diagonal e (e.size() >= d.size() - 1). Uses LAPACK's MRRR
/// driver; the divide-and-conquer driver goes through dgemm, which some
/// OpenBLAS builds get wrong at n ~ 1000.
TridiagonalEigen tridiagonal_eigen(std::vector<double> d, std::vector<double> e);

}  // namespace squeeze::detail
