#ifndef SCHURIAN_LINALG_HPP
#define SCHURIAN_LINALG_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace schurian::detail {

using cplx = std::complex<double>;

// Row-major dense complex matrix; only what the spectral code needs.
struct CMat {
  int rows = 0, cols = 0;
  std::vector<cplx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  cplx &operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const cplx &operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static CMat identity(int n);
  CMat operator*(const CMat &o) const;
  CMat &operator+=(const CMat &o);
  CMat &operator-=(const CMat &o);
  CMat &operator*=(cplx s);
  cplx trace() const;
  double max_abs() const;
};

// Eigenvalues of a general complex matrix via Hessenberg reduction and
// shifted QR with deflation. Throws std::runtime_error if the iteration
// fails to converge. Result order is unspecified.
std::vector<cplx> eigenvalues(CMat m);

// Solves A x = b in place for a single right-hand side with partial
// pivoting; throws std::runtime_error if A is (numerically) singular.
std::vector<cplx> lu_solve(CMat a, std::vector<cplx> b);

// Exact rational arithmetic on a 64-bit numerator/denominator pair;
// arithmetic throws std::overflow_error rather than wrapping.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n) {}
  Frac(long long n, long long d);

  Frac operator+(const Frac &o) const;
  Frac operator-(const Frac &o) const;
  Frac operator*(const Frac &o) const;
  Frac operator/(const Frac &o) const;
  bool operator==(const Frac &o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Reduced row echelon basis of the nullspace of an integer matrix
// (rows x cols, row-major), computed exactly.
std::vector<std::vector<Frac>> nullspace(const std::vector<long long> &m, int rows, int cols);

}  // namespace schurian::detail

#endif
