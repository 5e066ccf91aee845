#include "schurian/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

namespace schurian {

using detail::CMat;
using detail::cplx;
using detail::Frac;

// --- AlgebraicValue --------------------------------------------------------

AlgebraicValue AlgebraicValue::integer(long long v) {
  AlgebraicValue a;
  a.kind = Kind::Integer;
  a.num = v;
  a.approx = static_cast<double>(v);
  return a;
}

AlgebraicValue AlgebraicValue::rational(long long n, long long d) {
  Frac f(n, d);
  if (f.den == 1) return integer(f.num);
  AlgebraicValue a;
  a.kind = Kind::Rational;
  a.num = f.num;
  a.den = f.den;
  a.approx = f.to_double();
  return a;
}

AlgebraicValue AlgebraicValue::quadratic(long long an, long long ad, long long bn, long long bd, long long D) {
  if (bn == 0) return rational(an, ad);
  Frac fa(an, ad), fb(bn, bd);
  AlgebraicValue a;
  a.kind = Kind::Quadratic;
  a.num = fa.num;
  a.den = fa.den;
  a.bnum = fb.num;
  a.bden = fb.den;
  a.disc = D;
  double root = std::sqrt(std::abs(static_cast<double>(D)));
  if (D >= 0)
    a.approx = fa.to_double() + fb.to_double() * root;
  else
    a.approx = cplx(fa.to_double(), fb.to_double() * root);
  return a;
}

AlgebraicValue AlgebraicValue::approximate(cplx z, double err) {
  AlgebraicValue a;
  a.kind = Kind::Approximate;
  a.approx = z;
  a.err = err;
  return a;
}

bool AlgebraicValue::exact_equal(const AlgebraicValue &o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Integer: return num == o.num;
    case Kind::Rational: return num == o.num && den == o.den;
    case Kind::Quadratic:
      return num == o.num && den == o.den && bnum == o.bnum && bden == o.bden && disc == o.disc;
    case Kind::Approximate: return std::abs(approx - o.approx) <= 1e-12;
  }
  return false;
}

bool value_less(const AlgebraicValue &a, const AlgebraicValue &b, double tol) {
  cplx x = a.value(), y = b.value();
  if (std::abs(x.real() - y.real()) > tol) return x.real() < y.real();
  if (std::abs(x.imag() - y.imag()) > tol) return x.imag() < y.imag();
  return false;
}

// --- recognition -----------------------------------------------------------

namespace {

std::optional<Frac> try_rationalize(double x, long long max_den, double tol) {
  for (long long q = 1; q <= max_den; ++q) {
    double scaled = x * static_cast<double>(q);
    if (std::abs(scaled) > 9.0e18) return std::nullopt;
    long long p = std::llround(scaled);
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) return Frac(p, q);
  }
  return std::nullopt;
}

// t = s^2 * u with u squarefree; returns {s, u}.
std::pair<long long, long long> extract_square(long long t) {
  long long s = 1;
  for (long long k = 2; k * k <= t; ++k) {
    while (t % (k * k) == 0) {
      t /= k * k;
      s *= k;
    }
  }
  return {s, t};
}

}  // namespace

AlgebraicValue recognize_algebraic(cplx z, const SpectralConfig &cfg) {
  const double tol = cfg.tolerance;
  if (std::abs(z.imag()) <= tol) {
    double x = z.real();
    if (std::abs(x) < 9.0e18) {
      long long r = std::llround(x);
      if (std::abs(x - static_cast<double>(r)) <= tol) return AlgebraicValue::integer(r);
    }
    if (auto f = try_rationalize(x, cfg.max_denominator, tol))
      if (f->den > 1) return AlgebraicValue::rational(f->num, f->den);
    // quadratic irrational: search a small-height minimal polynomial
    // lead*x^2 + c1*x + c0 = 0
    for (int lead = 1; lead <= cfg.max_quadratic_lead; ++lead) {
      double x2 = static_cast<double>(lead) * x * x;
      long long c1_range = static_cast<long long>(2.0 * lead * (std::abs(x) + 1.0)) + 4;
      for (long long c1a = 0; c1a <= c1_range; ++c1a) {
        for (int sgn = 0; sgn < (c1a == 0 ? 1 : 2); ++sgn) {
          long long c1 = sgn == 0 ? c1a : -c1a;
          double rest = x2 + static_cast<double>(c1) * x;
          if (std::abs(rest) > 9.0e18) continue;
          long long c0 = -std::llround(rest);
          double residual = rest + static_cast<double>(c0);
          double scale = std::max(1.0, std::abs(x2) + std::abs(static_cast<double>(c1) * x));
          if (std::abs(residual) > tol * scale * 4.0) continue;
          long long delta = c1 * c1 - 4LL * lead * c0;
          if (delta <= 0) continue;
          auto [sq, u] = extract_square(delta);
          if (u <= 1) continue;  // perfect square => rational, handled above
          if (u > cfg.max_discriminant) continue;
          // x = (-c1 +- sq*sqrt(u)) / (2*lead)
          double root = std::sqrt(static_cast<double>(u));
          double a_val = -static_cast<double>(c1) / (2.0 * lead);
          long long bn = (x >= a_val) ? sq : -sq;
          double cand = a_val + static_cast<double>(bn) / (2.0 * lead) * root;
          if (std::abs(cand - x) <= tol * std::max(1.0, std::abs(x))) {
            return AlgebraicValue::quadratic(-c1, 2LL * lead, bn, 2LL * lead, u);
          }
        }
      }
    }
    return AlgebraicValue::approximate(cplx(x, 0.0), tol);
  }

  // complex: both roots of x^2 + beta x + gamma with rational beta, gamma
  auto beta = try_rationalize(-2.0 * z.real(), cfg.max_denominator, tol);
  auto gamma = try_rationalize(std::norm(z), cfg.max_denominator, tol);
  if (beta && gamma) {
    // delta = beta^2 - 4 gamma < 0
    try {
      Frac delta = (*beta) * (*beta) - Frac(4) * (*gamma);
      if (delta.num < 0) {
        long long t = -delta.num * delta.den;  // sqrt(delta) = i*sqrt(t)/den
        auto [sq, u] = extract_square(t);
        if (u >= 1 && u <= cfg.max_discriminant) {
          Frac a = Frac(0) - *beta / Frac(2);
          Frac babs(sq, 2 * delta.den);
          long long bn = z.imag() >= 0 ? babs.num : -babs.num;
          AlgebraicValue v = AlgebraicValue::quadratic(a.num, a.den, bn, babs.den, -u);
          if (std::abs(v.value() - z) <= tol * std::max(1.0, std::abs(z))) return v;
        }
      }
    } catch (const std::overflow_error &) {
      // fall through to approximate
    }
  }
  return AlgebraicValue::approximate(z, tol);
}

// --- character tables -------------------------------------------------------

namespace {

// Intersection matrix of class i: (L_i)_{k,j} = p_{ij}^k, the left regular
// representation of A_i on the basis {A_j}.
CMat intersection_matrix(const AssociationScheme &s, int i) {
  int m = s.classes() + 1;
  CMat L(m, m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) L(k, j) = static_cast<double>(s.p(i, j, k));
  return L;
}

std::vector<double> random_coefficients(std::mt19937 &rng, int count) {
  std::uniform_int_distribution<int> num(1, 997);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<double> c(count);
  for (auto &v : c) v = static_cast<double>(num(rng)) / static_cast<double>(den(rng));
  return c;
}

// Union-find clustering of eigenvalues at distance <= thresh; clusters must
// be separated by > 8*thresh or nothing is returned.
std::optional<std::vector<std::vector<int>>> cluster_eigenvalues(const std::vector<cplx> &eig,
                                                                 double thresh) {
  int m = static_cast<int>(eig.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(eig[i] - eig[j]) <= thresh) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(m, -1);
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (group_of[r] < 0) {
      group_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[r]].push_back(i);
  }
  // separation check between clusters
  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = a + 1; b < groups.size(); ++b)
      for (int i : groups[a])
        for (int j : groups[b])
          if (std::abs(eig[i] - eig[j]) <= 8.0 * thresh) return std::nullopt;
  // deterministic group order: by (Re, Im) of the first member's value
  std::sort(groups.begin(), groups.end(), [&](const auto &ga, const auto &gb) {
    cplx x = eig[ga[0]], y = eig[gb[0]];
    if (std::abs(x.real() - y.real()) > thresh) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return groups;
}

long long checked_round(double v, double tol, const char *what) {
  long long r = std::llround(v);
  if (std::abs(v - static_cast<double>(r)) > tol)
    throw std::runtime_error(std::string("numerical breakdown: ") + what + " = " + std::to_string(v) +
                             " is not an integer within tolerance");
  return r;
}

struct RawRow {
  std::vector<cplx> values;
  long long multiplicity = 0;
  int degree = 1;
};

CharacterTable assemble_table(const AssociationScheme &s, std::vector<RawRow> rows,
                              const SpectralConfig &cfg) {
  int m = s.classes() + 1;
  // identify the valency row
  int valency_row = -1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    bool match = true;
    for (int i = 0; i < m && match; ++i)
      match = std::abs(rows[r].values[i] - cplx(static_cast<double>(s.valency(i)))) < 1e-6 * s.order();
    if (match) {
      valency_row = static_cast<int>(r);
      break;
    }
  }
  if (valency_row < 0) throw std::runtime_error("numerical breakdown: no valency row found");
  std::swap(rows[0], rows[valency_row]);

  CharacterTable t;
  t.rows.resize(rows.size());
  t.multiplicities.resize(rows.size());
  t.degrees.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    t.multiplicities[r] = rows[r].multiplicity;
    t.degrees[r] = rows[r].degree;
    t.rows[r].reserve(m);
    for (int i = 0; i < m; ++i) t.rows[r].push_back(recognize_algebraic(rows[r].values[i], cfg));
  }
  // canonical order: valency row first, the rest by (degree, value tuple)
  std::vector<int> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin() + 1, idx.end(), [&](int a, int b) {
    if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
    for (int i = 0; i < m; ++i) {
      if (value_less(t.rows[a][i], t.rows[b][i])) return true;
      if (value_less(t.rows[b][i], t.rows[a][i])) return false;
    }
    return false;
  });
  CharacterTable out;
  for (int r : idx) {
    out.rows.push_back(std::move(t.rows[r]));
    out.multiplicities.push_back(t.multiplicities[r]);
    out.degrees.push_back(t.degrees[r]);
  }
  long long mass = 0;
  for (std::size_t r = 0; r < out.rows.size(); ++r) mass += out.multiplicities[r] * out.degrees[r];
  if (mass != s.order()) throw std::runtime_error("numerical breakdown: multiplicities do not sum to n");
  return out;
}

CharacterTable commutative_table(const AssociationScheme &s, const SpectralConfig &cfg) {
  const int d = s.classes();
  const int m = d + 1;
  const int n = s.order();
  std::vector<CMat> L;
  L.reserve(m);
  for (int i = 0; i < m; ++i) L.push_back(intersection_matrix(s, i));

  std::mt19937 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    auto coeff = random_coefficients(rng, d);
    CMat B(m, m);
    for (int i = 1; i <= d; ++i) {
      CMat term = L[i];
      term *= coeff[i - 1];
      B += term;
    }
    std::vector<cplx> eig;
    try {
      eig = detail::eigenvalues(B);
    } catch (const std::runtime_error &) {
      continue;
    }
    double scale = std::max(1.0, B.max_abs());
    auto groups = cluster_eigenvalues(eig, 1e-9 * scale);
    if (!groups || static_cast<int>(groups->size()) != m) continue;

    // Lagrange projectors of B give the primitive idempotents of the
    // regular module; traces against L_i read off the character values.
    std::vector<RawRow> rows;
    bool ok = true;
    for (int r = 0; r < m && ok; ++r) {
      cplx lr = eig[(*groups)[r][0]];
      CMat E = CMat::identity(m);
      for (int q = 0; q < m; ++q) {
        if (q == r) continue;
        cplx lq = eig[(*groups)[q][0]];
        CMat factor = B;
        for (int i = 0; i < m; ++i) factor(i, i) -= lq;
        factor *= 1.0 / (lr - lq);
        E = E * factor;
      }
      RawRow row;
      row.values.resize(m);
      for (int i = 0; i < m; ++i) row.values[i] = (L[i] * E).trace();
      // multiplicity from row orthogonality
      double denom = 0.0;
      for (int i = 0; i < m; ++i) denom += std::norm(row.values[i]) / s.valency(i);
      double mult = n / denom;
      try {
        row.multiplicity = checked_round(mult, 1e-6 * std::max(1.0, mult), "multiplicity");
      } catch (const std::runtime_error &) {
        ok = false;
        break;
      }
      if (row.multiplicity <= 0) { ok = false; break; }
      rows.push_back(std::move(row));
    }
    if (!ok) continue;
    return assemble_table(s, std::move(rows), cfg);
  }
  throw std::runtime_error("eigenspace separation failed after " + std::to_string(cfg.max_retries) +
                           " generic combinations");
}

CharacterTable general_table(const AssociationScheme &s, const SpectralConfig &cfg) {
  const int d = s.classes();
  const int m = d + 1;
  const int n = s.order();
  std::vector<CMat> L;
  L.reserve(m);
  for (int i = 0; i < m; ++i) L.push_back(intersection_matrix(s, i));

  // centre: x with [X, A_i] = 0 for all i, i.e.
  // sum_j x_j (p_{ji}^k - p_{ij}^k) = 0 for all (i,k)
  std::vector<long long> sys(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        sys[(static_cast<std::size_t>(i) * m + k) * m + j] = s.p(j, i, k) - s.p(i, j, k);
  auto centre = detail::nullspace(sys, m * m, m);
  const int c = static_cast<int>(centre.size());
  if (c < 1) throw std::runtime_error("centre computation failed");

  std::mt19937 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    auto coeff = random_coefficients(rng, c);
    std::vector<double> w(m, 0.0);
    for (int a = 0; a < c; ++a)
      for (int j = 0; j < m; ++j) w[j] += coeff[a] * centre[a][j].to_double();
    CMat Lw(m, m);
    for (int j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      CMat term = L[j];
      term *= w[j];
      Lw += term;
    }
    std::vector<cplx> eig;
    try {
      eig = detail::eigenvalues(Lw);
    } catch (const std::runtime_error &) {
      continue;
    }
    double scale = std::max(1.0, Lw.max_abs());
    auto groups = cluster_eigenvalues(eig, 1e-8 * scale);
    if (!groups || static_cast<int>(groups->size()) != c) continue;

    std::vector<RawRow> rows;
    bool ok = true;
    for (int g = 0; g < c && ok; ++g) {
      // e_chi = P_chi(w) evaluated in the algebra; coordinates obtained by
      // applying the Lagrange polynomial of Lw to the identity's coordinates
      std::vector<cplx> e(m, 0.0);
      e[0] = 1.0;
      cplx lg = eig[(*groups)[g][0]];
      for (int q = 0; q < c; ++q) {
        if (q == g) continue;
        cplx lq = eig[(*groups)[q][0]];
        std::vector<cplx> next(m, 0.0);
        for (int row = 0; row < m; ++row) {
          cplx acc = -lq * e[row];
          for (int col = 0; col < m; ++col) acc += Lw(row, col) * e[col];
          next[row] = acc / (lg - lq);
        }
        e = std::move(next);
      }
      int block = static_cast<int>((*groups)[g].size());  // n_chi^2
      int deg = static_cast<int>(std::llround(std::sqrt(static_cast<double>(block))));
      if (deg * deg != block) { ok = false; break; }
      double mult_f = static_cast<double>(n) * e[0].real() / deg;
      long long mult;
      try {
        mult = checked_round(mult_f, 1e-6 * std::max(1.0, mult_f), "multiplicity");
      } catch (const std::runtime_error &) {
        ok = false;
        break;
      }
      if (mult <= 0 || std::abs(e[0].imag()) > 1e-6) { ok = false; break; }
      RawRow row;
      row.degree = deg;
      row.multiplicity = mult;
      row.values.resize(m);
      for (int i = 0; i < m; ++i) {
        // chi(A_i) = n * (A_i e_chi)_0 / m_chi
        cplx coord0 = 0.0;
        for (int col = 0; col < m; ++col) coord0 += L[i](0, col) * e[col];
        row.values[i] = static_cast<double>(n) * coord0 / static_cast<double>(mult);
      }
      rows.push_back(std::move(row));
    }
    if (!ok) continue;
    long long degsq = 0;
    for (const auto &row : rows) degsq += static_cast<long long>(row.degree) * row.degree;
    if (degsq != m) continue;
    return assemble_table(s, std::move(rows), cfg);
  }
  throw std::runtime_error("centre splitting failed after " + std::to_string(cfg.max_retries) +
                           " generic combinations");
}

}  // namespace

CharacterTable character_table(const AssociationScheme &s, const SpectralConfig &cfg) {
  if (s.classes() == 0) {
    CharacterTable t;
    t.rows = {{AlgebraicValue::integer(1)}};
    t.multiplicities = {1};
    t.degrees = {1};
    return t;
  }
  if (s.is_commutative()) return commutative_table(s, cfg);
  return general_table(s, cfg);
}

VerifyResult verify_character_table(const AssociationScheme &s, const CharacterTable &t,
                                    double tolerance) {
  const int m = s.classes() + 1;
  const int n = s.order();
  if (t.column_count() != m || t.row_count() == 0 ||
      t.multiplicities.size() != t.rows.size() || t.degrees.size() != t.rows.size())
    throw std::invalid_argument("character table shape does not match the scheme");

  VerifyResult res;
  res.ok = true;
  auto fail = [&](const std::string &why) {
    res.ok = false;
    if (res.reason.empty()) res.reason = why;
  };

  const double tol = tolerance * std::max(1, n);
  // valency row with multiplicity 1
  for (int i = 0; i < m; ++i)
    if (std::abs(t.rows[0][i].value() - cplx(static_cast<double>(s.valency(i)))) > tol)
      fail("first row is not the valency row");
  if (t.multiplicities[0] != 1) fail("valency row multiplicity is not 1");

  // sum of squared degrees = dimension of the algebra
  long long degsq = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    degsq += static_cast<long long>(t.degrees[r]) * t.degrees[r];
    if (std::abs(t.rows[r][0].value() - cplx(static_cast<double>(t.degrees[r]))) > tol)
      fail("column 0 does not match the stated degree");
    if (t.multiplicities[r] <= 0) fail("non-positive multiplicity");
  }
  if (degsq != m) fail("degrees: sum of squares != d+1");

  // standard character: sum_chi m_chi chi(A_i) = n * delta_{i0}
  for (int i = 0; i < m; ++i) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      acc += static_cast<double>(t.multiplicities[r]) * t.rows[r][i].value();
    cplx want = i == 0 ? cplx(static_cast<double>(n)) : cplx(0.0);
    if (std::abs(acc - want) > tol) fail("standard character identity fails at column " + std::to_string(i));
  }

  if (s.is_commutative()) {
    // every row must be an algebra homomorphism
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          cplx lhs = t.rows[r][i].value() * t.rows[r][j].value();
          cplx rhs = 0.0;
          for (int k = 0; k < m; ++k) rhs += static_cast<double>(s.p(i, j, k)) * t.rows[r][k].value();
          if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(lhs))) {
            fail("row " + std::to_string(r) + " is not multiplicative at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
          }
        }
      }
    }
  } else {
    res.partial = true;
    if (res.reason.empty()) res.reason = "product identities skipped (non-commutative scheme)";
  }
  return res;
}

std::vector<ComplexMatrix> minimal_idempotent_basis(const AssociationScheme &s,
                                                    const SpectralConfig &cfg) {
  if (!s.is_commutative())
    throw std::invalid_argument("minimal idempotent basis requires a commutative scheme");
  CharacterTable t = character_table(s, cfg);
  const int n = s.order();
  const int m = s.classes() + 1;
  std::vector<CMat> out;
  out.reserve(m);
  for (int r = 0; r < m; ++r) {
    CMat E(n, n);
    for (int x = 1; x <= n; ++x)
      for (int y = 1; y <= n; ++y) {
        int i = s.relation_matrix().at(x, y);
        E(x - 1, y - 1) = static_cast<double>(t.multiplicities[r]) / static_cast<double>(n) *
                          std::conj(t.rows[r][i].value()) / static_cast<double>(s.valency(i));
      }
    out.push_back(std::move(E));
  }
  return out;
}

std::optional<std::vector<int>> is_metric(const AssociationScheme &s) {
  if (!s.is_symmetric()) return std::nullopt;
  const int n = s.order();
  const int d = s.classes();
  if (d == 0) return std::vector<int>{0};
  const auto &M = s.relation_matrix();
  for (int c = 1; c <= d; ++c) {
    std::vector<int> class_dist(d + 1, -1);
    bool ok = true;
    std::vector<int> dist(n);
    for (int src = 1; src <= n && ok; ++src) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[src - 1] = 0;
      std::vector<int> frontier{src};
      int level = 0;
      while (!frontier.empty()) {
        ++level;
        std::vector<int> next;
        for (int u : frontier)
          for (int v = 1; v <= n; ++v)
            if (M.at(u, v) == c && dist[v - 1] < 0) {
              dist[v - 1] = level;
              next.push_back(v);
            }
        frontier = std::move(next);
      }
      for (int t = 1; t <= n && ok; ++t) {
        if (dist[t - 1] < 0) { ok = false; break; }  // relation graph disconnected
        int cls = M.at(src, t);
        if (class_dist[cls] < 0) class_dist[cls] = dist[t - 1];
        else if (class_dist[cls] != dist[t - 1]) ok = false;
      }
    }
    if (!ok) continue;
    // distances must be exactly 0..d and hit each class once
    std::vector<int> order(d + 1, -1);
    bool bijective = true;
    for (int cls = 0; cls <= d; ++cls) {
      int dd = class_dist[cls];
      if (dd < 0 || dd > d || order[dd] != -1) { bijective = false; break; }
      order[dd] = cls;
    }
    if (!bijective) continue;
    return order;
  }
  return std::nullopt;
}

KreinParameters krein_parameters(const AssociationScheme &s, const CharacterTable &t) {
  const int m = s.classes() + 1;
  CMat Q = eigenmatrix_Q(s, t);
  KreinParameters kp;
  kp.m = m;
  kp.q.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  kp.min_value = 0.0;
  // solve sum_k q_{ij}^k Q_{l,k} = Q_{l,i} * Q_{l,j} for each (i,j)
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      std::vector<cplx> rhs(m);
      for (int l = 0; l < m; ++l) rhs[l] = Q(l, i) * Q(l, j);
      auto q = detail::lu_solve(Q, rhs);
      for (int k = 0; k < m; ++k) {
        double v = q[k].real();
        kp.q[(static_cast<std::size_t>(i) * m + j) * m + k] = v;
        kp.min_value = std::min(kp.min_value, v);
      }
    }
  }
  return kp;
}

std::optional<std::vector<int>> is_cometric(const AssociationScheme &s, const SpectralConfig &cfg) {
  if (!s.is_symmetric()) return std::nullopt;
  const int d = s.classes();
  if (d == 0) return std::vector<int>{0};
  CharacterTable t = character_table(s, cfg);
  KreinParameters kp = krein_parameters(s, t);
  double maxq = 0.0;
  for (double v : kp.q) maxq = std::max(maxq, std::abs(v));
  const double zero_tol = 1e-6 * std::max(1.0, maxq);

  for (int e = 1; e <= d; ++e) {
    std::vector<int> order{0, e};
    std::vector<bool> used(d + 1, false);
    used[0] = used[e] = true;
    bool ok = true;
    while (static_cast<int>(order.size()) <= d && ok) {
      int last = order.back();
      int next = -1;
      for (int k = 0; k <= d; ++k) {
        if (used[k] || std::abs(kp.at(e, last, k)) <= zero_tol) continue;
        if (next != -1) { ok = false; break; }
        next = k;
      }
      if (!ok || next < 0) { ok = false; break; }
      used[next] = true;
      order.push_back(next);
    }
    if (!ok) continue;
    // verify the full three-term pattern
    bool good = true;
    for (int a = 0; a <= d && good; ++a)
      for (int b = 0; b <= d && good; ++b) {
        double v = kp.at(e, order[a], order[b]);
        if (std::abs(a - b) > 1 && std::abs(v) > zero_tol) good = false;
        if (std::abs(a - b) == 1 && std::abs(v) <= zero_tol) good = false;
      }
    if (good) return order;
  }
  return std::nullopt;
}

ComplexMatrix eigenmatrix_P(const CharacterTable &t) {
  int rows = t.row_count(), cols = t.column_count();
  CMat P(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < cols; ++i) P(r, i) = t.rows[r][i].value();
  return P;
}

ComplexMatrix eigenmatrix_Q(const AssociationScheme &s, const CharacterTable &t) {
  int m = t.column_count();
  if (t.row_count() != m)
    throw std::invalid_argument("eigenmatrix Q requires a commutative table (rows == d+1)");
  CMat Q(m, m);
  for (int i = 0; i < m; ++i)
    for (int r = 0; r < m; ++r)
      Q(i, r) = static_cast<double>(t.multiplicities[r]) * std::conj(t.rows[r][i].value()) /
                static_cast<double>(s.valency(i));
  return Q;
}

}  // namespace schurian
