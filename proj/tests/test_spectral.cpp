#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "fixtures.hpp"
#include "schurian/spectral.hpp"

using namespace schurian;
using namespace fixtures;

namespace {

using cplx = std::complex<double>;

bool row_matches(const std::vector<AlgebraicValue> &row, const std::vector<cplx> &want,
                 double tol = 1e-9) {
  if (row.size() != want.size()) return false;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (std::abs(row[i].value() - want[i]) > tol) return false;
  return true;
}

int find_row(const CharacterTable &t, const std::vector<cplx> &want, double tol = 1e-9) {
  for (int r = 0; r < t.row_count(); ++r)
    if (row_matches(t.rows[r], want, tol)) return r;
  return -1;
}

}  // namespace

TEST_CASE("trivial scheme table") {
  AssociationScheme s = trivial_scheme(5);
  CharacterTable t = character_table(s);
  REQUIRE(t.row_count() == 2);
  CHECK(row_matches(t.rows[0], {1.0, 4.0}));
  CHECK(row_matches(t.rows[1], {1.0, -1.0}));
  CHECK(t.multiplicities == std::vector<long long>{1, 4});
  CHECK(verify_character_table(s, t).ok);
}

TEST_CASE("order-8 sample table") {
  AssociationScheme s = order8_sample_scheme();
  CharacterTable t = character_table(s);
  REQUIRE(t.row_count() == 4);
  const double r3 = std::sqrt(3.0);
  CHECK(find_row(t, {1, 3, 3, 1}) == 0);
  int plus = find_row(t, {1, cplx(0, r3), cplx(0, -r3), -1});
  int minus = find_row(t, {1, cplx(0, -r3), cplx(0, r3), -1});
  int real_row = find_row(t, {1, -1, -1, 1});
  REQUIRE(plus > 0);
  REQUIRE(minus > 0);
  REQUIRE(real_row > 0);
  CHECK(t.multiplicities[0] == 1);
  CHECK(t.multiplicities[plus] == 2);
  CHECK(t.multiplicities[minus] == 2);
  CHECK(t.multiplicities[real_row] == 3);
  CHECK(verify_character_table(s, t).ok);

  // the imaginary entries are recognized exactly as sqrt(-3) multiples
  const AlgebraicValue &v = t.rows[plus][1];
  CHECK(v.kind == AlgebraicValue::Kind::Quadratic);
  CHECK(v.disc == -3);
}

TEST_CASE("pentagon table carries golden-ratio eigenvalues") {
  AssociationScheme s = pentagon_scheme();
  CharacterTable t = character_table(s);
  REQUIRE(t.row_count() == 3);
  const double a = (-1 + std::sqrt(5.0)) / 2;
  const double b = (-1 - std::sqrt(5.0)) / 2;
  CHECK(find_row(t, {1, 2, 2}) == 0);
  CHECK(find_row(t, {1, a, b}) > 0);
  CHECK(find_row(t, {1, b, a}) > 0);
  CHECK(t.multiplicities == std::vector<long long>{1, 2, 2});
  for (int r = 1; r < 3; ++r) {
    CHECK(t.rows[r][1].kind == AlgebraicValue::Kind::Quadratic);
    CHECK(t.rows[r][1].disc == 5);
  }
  CHECK(verify_character_table(s, t).ok);
}

TEST_CASE("thin dihedral table has one degree-2 character") {
  AssociationScheme s = thin_scheme(d4_regular());
  REQUIRE_FALSE(s.is_commutative());
  CharacterTable t = character_table(s);
  REQUIRE(t.row_count() == 5);
  int deg2 = 0, deg1 = 0;
  for (int r = 0; r < 5; ++r) {
    if (t.degrees[r] == 2) {
      ++deg2;
      CHECK(t.multiplicities[r] == 2);
    } else if (t.degrees[r] == 1) {
      ++deg1;
      CHECK(t.multiplicities[r] == 1);
    }
  }
  CHECK(deg2 == 1);
  CHECK(deg1 == 4);
  auto res = verify_character_table(s, t);
  CHECK(res.ok);
  CHECK(res.partial);  // non-commutative: product identities are skipped
}

TEST_CASE("verification rejects a corrupted table") {
  AssociationScheme s = order8_sample_scheme();
  CharacterTable t = character_table(s);
  CharacterTable broken = t;
  // negate an off-valency entry that is actually -1
  int row = -1, col = -1;
  for (int r = 1; r < t.row_count() && row < 0; ++r)
    for (int i = 1; i < t.column_count(); ++i)
      if (t.rows[r][i].kind == AlgebraicValue::Kind::Integer && t.rows[r][i].num == -1) {
        row = r;
        col = i;
        break;
      }
  REQUIRE(row > 0);
  broken.rows[row][col] = AlgebraicValue::integer(1);
  CHECK_FALSE(verify_character_table(s, broken).ok);

  CharacterTable misshaped = t;
  misshaped.rows.pop_back();
  misshaped.multiplicities.pop_back();
  misshaped.degrees.pop_back();
  CHECK_FALSE(verify_character_table(s, misshaped).ok);  // degree sum breaks

  CharacterTable wrong_shape = t;
  for (auto &row : wrong_shape.rows) row.pop_back();
  CHECK_THROWS_AS(verify_character_table(s, wrong_shape), std::invalid_argument);
}

TEST_CASE("row orthogonality and eigenmatrix identity") {
  for (const AssociationScheme &s :
       {pentagon_scheme(), order8_sample_scheme(), trivial_scheme(6),
        thin_scheme(group_of(6, {"(1,2,3,4,5,6)"})), thin_scheme(klein_regular())}) {
    REQUIRE(s.is_commutative());
    CharacterTable t = character_table(s);
    const int m = s.classes() + 1;
    REQUIRE(t.row_count() == m);
    const int n = s.order();
    for (int r = 0; r < m; ++r)
      for (int q = 0; q < m; ++q) {
        cplx acc = 0;
        for (int i = 0; i < m; ++i)
          acc += t.rows[r][i].value() * std::conj(t.rows[q][i].value()) /
                 static_cast<double>(s.valency(i));
        cplx want = r == q ? cplx(static_cast<double>(n) / t.multiplicities[r]) : cplx(0);
        CHECK(std::abs(acc - want) < 1e-7);
      }
    ComplexMatrix P = eigenmatrix_P(t);
    ComplexMatrix Q = eigenmatrix_Q(s, t);
    ComplexMatrix PQ = P * Q;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cplx want = i == j ? cplx(n) : cplx(0);
        CHECK(std::abs(PQ(i, j) - want) < 1e-7);
      }
  }
}

TEST_CASE("minimal idempotent basis") {
  AssociationScheme s = pentagon_scheme();
  auto E = minimal_idempotent_basis(s);
  REQUIRE(E.size() == 3);
  const int n = 5;
  // E_0 = J/n
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(std::abs(E[0](i, j) - cplx(1.0 / n)) < 1e-9);
  // mutually orthogonal idempotents resolving the identity
  ComplexMatrix sum(n, n);
  for (std::size_t r = 0; r < E.size(); ++r) {
    sum += E[r];
    ComplexMatrix sq = E[r] * E[r];
    sq -= E[r];
    CHECK(sq.max_abs() < 1e-8);
    for (std::size_t q = 0; q < E.size(); ++q) {
      if (q == r) continue;
      CHECK((E[r] * E[q]).max_abs() < 1e-8);
    }
    // rank = multiplicity
    CharacterTable t = character_table(s);
    CHECK(std::abs(E[r].trace() - cplx(static_cast<double>(t.multiplicities[r]))) < 1e-7);
  }
  ComplexMatrix eye = ComplexMatrix::identity(n);
  sum -= eye;
  CHECK(sum.max_abs() < 1e-8);

  CHECK_THROWS_AS(minimal_idempotent_basis(thin_scheme(d4_regular())), std::invalid_argument);
}

TEST_CASE("metric detection") {
  auto pent = is_metric(pentagon_scheme());
  REQUIRE(pent.has_value());
  CHECK(*pent == std::vector<int>{0, 1, 2});

  auto triv = is_metric(trivial_scheme(5));
  REQUIRE(triv.has_value());
  CHECK(*triv == std::vector<int>{0, 1});

  // Klein thin scheme: every candidate class is a perfect matching
  CHECK_FALSE(is_metric(thin_scheme(klein_regular())).has_value());
  // non-symmetric schemes are out of scope by definition
  CHECK_FALSE(is_metric(order8_sample_scheme()).has_value());
}

TEST_CASE("cometric detection") {
  CHECK(is_cometric(trivial_scheme(4)).has_value());
  CHECK(is_cometric(pentagon_scheme()).has_value());
  CHECK_FALSE(is_cometric(order8_sample_scheme()).has_value());  // non-symmetric
}

TEST_CASE("metric and cometric are relabeling invariant") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    for (const AssociationScheme &s :
         {pentagon_scheme(), thin_scheme(klein_regular()), trivial_scheme(6)}) {
      const int n = s.order();
      const int d = s.classes();
      std::vector<int> sigma_f(n);
      for (int i = 0; i < n; ++i) sigma_f[i] = i + 1;
      std::shuffle(sigma_f.begin(), sigma_f.end(), rng);
      std::vector<int> sigma_g(d + 1);
      for (int i = 0; i <= d; ++i) sigma_g[i] = i;
      std::shuffle(sigma_g.begin() + 1, sigma_g.end(), rng);
      AssociationScheme moved =
          AssociationScheme::from_relation_matrix(relabel(s.relation_matrix(), sigma_f, sigma_g));
      CHECK(is_metric(s).has_value() == is_metric(moved).has_value());
      CHECK(is_cometric(s).has_value() == is_cometric(moved).has_value());
    }
  }
}

TEST_CASE("krein parameters of the pentagon") {
  AssociationScheme s = pentagon_scheme();
  KreinParameters kp = krein_parameters(s, character_table(s));
  CHECK(kp.min_value > -1e-9);
  // q_{0j}^k = delta_{jk}
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(kp.at(0, j, k) - (j == k ? 1.0 : 0.0)) < 1e-7);
}

TEST_CASE("algebraic recognition") {
  SpectralConfig cfg;
  AlgebraicValue v = recognize_algebraic(cplx(2.9999999999, 0), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Integer);
  CHECK(v.num == 3);

  v = recognize_algebraic(cplx(0, 1.7320508075688772), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Quadratic);
  CHECK(v.num == 0);
  CHECK(v.bnum == 1);
  CHECK(v.bden == 1);
  CHECK(v.disc == -3);

  v = recognize_algebraic(cplx(0.6180339887498949, 0), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Quadratic);
  CHECK(v.disc == 5);
  CHECK(std::abs(v.value() - cplx(0.6180339887498949)) < 1e-9);

  v = recognize_algebraic(cplx(0.5, 0), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Rational);
  CHECK(v.num == 1);
  CHECK(v.den == 2);

  // a primitive 7th root of unity is degree 6: recognition must decline
  double angle = 2 * M_PI / 7;
  v = recognize_algebraic(cplx(std::cos(angle), std::sin(angle)), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Approximate);

  // E(3) = (-1 + sqrt(-3))/2 is quadratic
  angle = 2 * M_PI / 3;
  v = recognize_algebraic(cplx(std::cos(angle), std::sin(angle)), cfg);
  CHECK(v.kind == AlgebraicValue::Kind::Quadratic);
  CHECK(v.disc == -3);
  CHECK(v.num == -1);
  CHECK(v.den == 2);
}

TEST_CASE("character tables of thin cyclic schemes stay verifiable") {
  // Z_7: entries are 7th roots of unity, not quadratic; the approximate
  // fallback must still verify
  AssociationScheme s = thin_scheme(group_of(7, {"(1,2,3,4,5,6,7)"}));
  CharacterTable t = character_table(s);
  REQUIRE(t.row_count() == 7);
  CHECK(verify_character_table(s, t).ok);
  long long mass = 0;
  for (long long m : t.multiplicities) mass += m;
  CHECK(mass == 7);
}

TEST_CASE("splitting reports failure instead of looping forever") {
  SpectralConfig cfg;
  cfg.max_retries = 0;
  CHECK_THROWS_AS(character_table(pentagon_scheme(), cfg), std::runtime_error);
  CHECK_THROWS_AS(character_table(thin_scheme(d4_regular()), cfg), std::runtime_error);
}
