#ifndef SCHURIAN_SPECTRAL_HPP
#define SCHURIAN_SPECTRAL_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "schurian/linalg.hpp"
#include "schurian/scheme.hpp"

namespace schurian {

using ComplexMatrix = detail::CMat;

// A character-table entry: exact when recognition succeeded, otherwise the
// approximate complex value with an error bound.
struct AlgebraicValue {
  enum class Kind { Integer, Rational, Quadratic, Approximate };

  Kind kind = Kind::Integer;
  // Integer/Rational: num/den. Quadratic a + b*sqrt(disc): a = num/den,
  // b = bnum/bden, disc squarefree (negative for imaginary parts), b != 0.
  long long num = 0, den = 1;
  long long bnum = 0, bden = 1;
  long long disc = 0;
  std::complex<double> approx;  // numeric value, populated for every kind
  double err = 0.0;             // error bound (Approximate only)

  static AlgebraicValue integer(long long v);
  static AlgebraicValue rational(long long n, long long d);
  static AlgebraicValue quadratic(long long an, long long ad, long long bn, long long bd, long long D);
  static AlgebraicValue approximate(std::complex<double> z, double err);

  std::complex<double> value() const { return approx; }
  bool is_exact() const { return kind != Kind::Approximate; }
  bool exact_equal(const AlgebraicValue &o) const;
};

struct CharacterTable {
  // rows[r][i] = chi_r(A_i); row 0 is the valency row.
  std::vector<std::vector<AlgebraicValue>> rows;
  std::vector<long long> multiplicities;
  std::vector<int> degrees;  // chi_r(A_0)

  int row_count() const { return static_cast<int>(rows.size()); }
  int column_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

struct SpectralConfig {
  double tolerance = 1e-9;
  unsigned seed = 0x5eed5u;
  int max_retries = 32;
  long long max_denominator = 64;    // rational recognition bound
  long long max_discriminant = 5000; // |D| bound for quadratic recognition
  int max_quadratic_lead = 12;       // leading coefficient bound for minimal polynomials
};

// Character table with multiplicities. Commutative schemes go through a
// simultaneous eigenspace split of the intersection matrices driven by a
// seeded generic combination; the general case splits the centre of the
// adjacency algebra into primitive central idempotents. Throws
// std::runtime_error if the eigenvalue separation keeps failing after
// max_retries reseedings or a multiplicity fails its integrality check.
CharacterTable character_table(const AssociationScheme &s, const SpectralConfig &cfg = {});

struct VerifyResult {
  bool ok = false;
  bool partial = false;  // product identities skipped (non-commutative, no idempotents)
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Checks the standard-character identity, the valency row, sum of squared
// degrees, and (for commutative schemes) that every row is an algebra
// homomorphism. Throws std::invalid_argument on shape mismatch.
VerifyResult verify_character_table(const AssociationScheme &s, const CharacterTable &t,
                                    double tolerance = 1e-7);

// Minimal idempotent basis E_0..E_d of a commutative scheme, ordered like
// the character-table rows (E_0 = J/n). Throws std::invalid_argument on a
// non-commutative scheme.
std::vector<ComplexMatrix> minimal_idempotent_basis(const AssociationScheme &s,
                                                    const SpectralConfig &cfg = {});

// P-polynomial test: present iff some class ordering makes the scheme the
// distance partition of its first class. Absent for non-symmetric schemes.
std::optional<std::vector<int>> is_metric(const AssociationScheme &s);

struct KreinParameters {
  int m = 0;  // d + 1
  std::vector<double> q;
  double min_value = 0.0;  // smallest entry (slight negatives are noise)
  double at(int i, int j, int k) const {
    return q[(static_cast<std::size_t>(i) * m + j) * m + k];
  }
};

KreinParameters krein_parameters(const AssociationScheme &s, const CharacterTable &t);

// Q-polynomial test via the three-term pattern of the Krein parameters.
// Absent for non-symmetric schemes. The returned ordering indexes
// character-table rows (equivalently minimal idempotents).
std::optional<std::vector<int>> is_cometric(const AssociationScheme &s, const SpectralConfig &cfg = {});

// Exact recognition of an approximate value as integer / bounded-denominator
// rational / quadratic irrational; returns the input unchanged (as
// Approximate) when nothing matches within tolerance.
AlgebraicValue recognize_algebraic(std::complex<double> z, const SpectralConfig &cfg = {});

// First and second eigenmatrices of a commutative scheme: P from the table
// rows, Q from multiplicities and valencies; P*Q = n*I.
ComplexMatrix eigenmatrix_P(const CharacterTable &t);
ComplexMatrix eigenmatrix_Q(const AssociationScheme &s, const CharacterTable &t);

// Deterministic value ordering used for canonical row order.
bool value_less(const AlgebraicValue &a, const AlgebraicValue &b, double tol = 1e-9);

}  // namespace schurian

#endif
