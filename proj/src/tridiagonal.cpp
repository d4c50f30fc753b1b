#include "squeeze/tridiagonal.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>

namespace squeeze::detail {

TridiagonalEigen tridiagonal_eigen(std::vector<double> d, std::vector<double> e) {
  const auto n = static_cast<lapack_int>(d.size());
  TridiagonalEigen out;
  if (n == 0) return out;
  e.resize(d.size(), 0.0);
  out.values.resize(d.size());
  out.vectors.resize(d.size() * d.size());
  std::vector<lapack_int> support(2 * d.size());
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0,
                                         &found, out.values.data(), out.vectors.data(), n, support.data());
  if (info != 0 || found != n) throw std::runtime_error("dstevr failed with info " + std::to_string(info));
  return out;
}

}  // namespace squeeze::detail
