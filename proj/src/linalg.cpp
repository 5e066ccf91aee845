#include "schurian/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace schurian::detail {

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::operator*(const CMat &o) const {
  CMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cplx v = (*this)(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
    }
  return r;
}

CMat &CMat::operator+=(const CMat &o) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

CMat &CMat::operator-=(const CMat &o) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
  return *this;
}

CMat &CMat::operator*=(cplx s) {
  for (auto &v : a) v *= s;
  return *this;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < rows; ++i) t += (*this)(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto &v : a) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(CMat &h) {
  int n = h.rows;
  for (int k = 0; k < n - 2; ++k) {
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(h(i, k));
    if (scale == 0.0) continue;
    std::vector<cplx> v(n, 0.0);
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k) / scale;
      norm2 += std::norm(v[i]);
    }
    double alpha = std::sqrt(norm2);
    if (alpha == 0.0) continue;
    cplx phase = v[k + 1] == 0.0 ? cplx(1.0) : v[k + 1] / std::abs(v[k + 1]);
    v[k + 1] += phase * alpha;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    // H = I - 2 v v* / (v* v); apply H * h * H
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (int i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

}  // namespace

std::vector<cplx> eigenvalues(CMat m) {
  if (m.rows != m.cols) throw std::runtime_error("eigenvalues: matrix not square");
  int n = m.rows;
  std::vector<cplx> eig(n);
  if (n == 0) return eig;
  if (n == 1) return {m(0, 0)};

  hessenberg(m);
  double scale = std::max(m.max_abs(), 1.0);
  const double eps = 1e-14;

  int hi = n - 1;
  int stall = 0;
  long long budget = 60LL * n * n;
  while (hi >= 0) {
    if (--budget < 0) throw std::runtime_error("eigenvalue iteration failed to converge");
    // find the active block [lo..hi]
    int lo = hi;
    while (lo > 0 && std::abs(m(lo, lo - 1)) >
                         eps * std::max(std::abs(m(lo - 1, lo - 1)) + std::abs(m(lo, lo)), scale))
      --lo;
    if (lo > 0) m(lo, lo - 1) = 0.0;
    if (lo == hi) {
      eig[hi] = m(hi, hi);
      --hi;
      stall = 0;
      continue;
    }
    if (lo == hi - 1) {
      // 2x2 block: solve directly
      cplx a = m(lo, lo), b = m(lo, hi), c = m(hi, lo), dd = m(hi, hi);
      cplx tr = a + dd;
      cplx disc = std::sqrt(tr * tr - 4.0 * (a * dd - b * c));
      eig[hi] = (tr + disc) / 2.0;
      eig[lo] = (tr - disc) / 2.0;
      hi -= 2;
      stall = 0;
      continue;
    }
    // Wilkinson shift from the trailing 2x2
    cplx a = m(hi - 1, hi - 1), b = m(hi - 1, hi), c = m(hi, hi - 1), dd = m(hi, hi);
    cplx tr = a + dd;
    cplx disc = std::sqrt(tr * tr - 4.0 * (a * dd - b * c));
    cplx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
    cplx mu = std::abs(l1 - dd) < std::abs(l2 - dd) ? l1 : l2;
    if (++stall % 16 == 0) mu = dd + cplx(std::abs(m(hi, hi - 1)), 0.0);  // exceptional shift

    // explicit single-shift QR on the active block via Givens rotations
    int len = hi - lo + 1;
    std::vector<cplx> cs(len), sn(len);
    for (int i = lo; i <= hi; ++i) m(i, i) -= mu;
    for (int k = lo; k < hi; ++k) {
      cplx x = m(k, k), y = m(k + 1, k);
      double r = std::sqrt(std::norm(x) + std::norm(y));
      cplx cr, sr;
      if (r == 0.0) { cr = 1.0; sr = 0.0; }
      else { cr = std::conj(x) / r; sr = std::conj(y) / r; }
      cs[k - lo] = cr;
      sn[k - lo] = sr;
      for (int j = k; j <= hi; ++j) {
        cplx t1 = m(k, j), t2 = m(k + 1, j);
        m(k, j) = cr * t1 + sr * t2;
        m(k + 1, j) = -std::conj(sr) * t1 + std::conj(cr) * t2;
      }
    }
    for (int k = lo; k < hi; ++k) {
      cplx cr = cs[k - lo], sr = sn[k - lo];
      for (int i = lo; i <= std::min(hi, k + 1); ++i) {
        cplx t1 = m(i, k), t2 = m(i, k + 1);
        m(i, k) = t1 * std::conj(cr) + t2 * std::conj(sr);
        m(i, k + 1) = -t1 * sr + t2 * cr;
      }
    }
    for (int i = lo; i <= hi; ++i) m(i, i) += mu;
  }
  return eig;
}

std::vector<cplx> lu_solve(CMat a, std::vector<cplx> b) {
  int n = a.rows;
  if (a.cols != n || static_cast<int>(b.size()) != n)
    throw std::runtime_error("lu_solve: shape mismatch");
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) < 1e-13)
      throw std::runtime_error("lu_solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      cplx f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return b;
}

namespace {

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}
long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace

Frac::Frac(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) { num = -num; den = -den; }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
}

Frac Frac::operator+(const Frac &o) const {
  return Frac(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)), checked_mul(den, o.den));
}
Frac Frac::operator-(const Frac &o) const {
  return Frac(checked_add(checked_mul(num, o.den), -checked_mul(o.num, den)), checked_mul(den, o.den));
}
Frac Frac::operator*(const Frac &o) const {
  return Frac(checked_mul(num, o.num), checked_mul(den, o.den));
}
Frac Frac::operator/(const Frac &o) const {
  if (o.num == 0) throw std::invalid_argument("division by zero");
  return Frac(checked_mul(num, o.den), checked_mul(den, o.num));
}

std::vector<std::vector<Frac>> nullspace(const std::vector<long long> &m, int rows, int cols) {
  std::vector<std::vector<Frac>> a(rows, std::vector<Frac>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = Frac(m[static_cast<std::size_t>(i) * cols + j]);

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!a[i][c].is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    Frac inv = Frac(1) / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Frac f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Frac>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Frac> v(cols, Frac(0));
    v[c] = Frac(1);
    for (int i = 0; i < r; ++i) v[pivot_col[i]] = Frac(0) - a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace schurian::detail
