// Dense reference implementations used only by tests: a Kronecker-product
// builder and an LU solve with partial pivoting. They deliberately ignore the
// tensor structure the library exploits, so agreement is meaningful.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

// Row-major dense matrix.
struct Dense {
  std::size_t n = 0;
  std::vector<double> a;

  double& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// Kronecker product with `b` varying fastest: (a ⊗ b)[ib*na+ia, jb*na+ja]
// would be the usual convention; here we build the register matrix so that
// qubit 0 is the fastest-varying index, matching a little-endian outcome
// layout. factors[j] is qubit j's 2x2 matrix in row-major order.
inline Dense register_matrix(const std::vector<std::array<double, 4>>& factors) {
  Dense m;
  m.n = std::size_t{1} << factors.size();
  m.a.assign(m.n * m.n, 0.0);
  for (std::size_t r = 0; r < m.n; ++r) {
    for (std::size_t c = 0; c < m.n; ++c) {
      double v = 1.0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const std::size_t rb = (r >> j) & 1u;
        const std::size_t cb = (c >> j) & 1u;
        v *= factors[j][rb * 2 + cb];
      }
      m.a[r * m.n + c] = v;
    }
  }
  return m;
}

// Solves m x = rhs by LU decomposition with partial pivoting.
inline std::vector<double> lu_solve(Dense m, std::vector<double> rhs) {
  const std::size_t n = m.n;
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
    }
    if (std::abs(m.at(pivot, col)) < 1e-14) throw std::runtime_error("singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m.a[pivot * n + c], m.a[col * n + c]);
      std::swap(rhs[pivot], rhs[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m.at(r, col) / m.at(col, col);
      m.at(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double v = rhs[ri];
    for (std::size_t c = ri + 1; c < n; ++c) v -= m.at(ri, c) * x[c];
    x[ri] = v / m.at(ri, ri);
  }
  return x;
}

}  // namespace oracle
