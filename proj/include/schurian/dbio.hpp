#ifndef SCHURIAN_DBIO_HPP
#define SCHURIAN_DBIO_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "schurian/linalg.hpp"
#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"
#include "schurian/spectral.hpp"

namespace schurian {

// One term of a cyclotomic expression: coeff * E(order)^power, where E(n)
// is the primitive n-th root of unity. A term with order == 1 is a plain
// rational constant.
struct CycTerm {
  detail::Frac coeff;
  long long order = 1;
  long long power = 0;
};

// Rational-linear combination of roots of unity, kept in parse order so
// re-serialization is faithful. A decimal fallback entry ("~1.25" or
// "~0.5+0.87i") is carried as an approximate value instead of terms.
struct CycExpr {
  std::vector<CycTerm> terms;
  bool is_approx = false;
  std::complex<double> approx_value;

  std::complex<double> evaluate() const;
};

CycExpr parse_cyc_expr(const std::string &text);
std::string format_cyc_expr(const CycExpr &e);

// Renders an exact value in E(n) notation (quadratic irrationals expand
// through the Gauss sum of the corresponding Kronecker character);
// approximate values render as marked decimals.
std::string format_algebraic(const AlgebraicValue &v);
CycExpr algebraic_to_cyc(const AlgebraicValue &v);

int kronecker_symbol(long long a, long long n);

// Parsed form of a database line [M, S, x, T, L].
struct SchemeRecord {
  RelationMatrix matrix;
  std::vector<Permutation> aut_generators;
  long long transitive_id = -1;  // opaque; -1 when unknown
  CharacterTable table;          // entries recognized from the expressions
  std::vector<std::vector<CycExpr>> raw_table;  // as parsed / as to be written
  std::vector<long long> multiplicities;
};

// Throws ValidationError with line/column context on malformed input.
SchemeRecord parse_scheme_line(const std::string &text);
std::string write_scheme_line(const SchemeRecord &r);

// Semantic checks beyond syntax: the matrix validates, <S> fixes every
// class, and L matches the table shape. Throws ValidationError on failure.
void validate_record(const SchemeRecord &r);

struct ClosureRecord {
  long long x = 0;
  long long y = 0;
  bool operator==(const ClosureRecord &o) const { return x == o.x && y == o.y; }
};

ClosureRecord parse_closure_line(const std::string &text);
std::string write_closure_line(const ClosureRecord &r);

// Database files: one record per line; multi-line records (bracket
// balance) are tolerated on input.
std::vector<SchemeRecord> read_scheme_database(std::istream &in);
std::vector<SchemeRecord> read_scheme_database_file(const std::string &path);
void write_scheme_database(std::ostream &out, const std::vector<SchemeRecord> &records);
std::vector<ClosureRecord> read_closure_database(std::istream &in);
std::vector<ClosureRecord> read_closure_database_file(const std::string &path);
void write_closure_database(std::ostream &out, const std::vector<ClosureRecord> &records);

// Property census over pairwise non-isomorphic schemes of one order;
// metric/cometric are counted over symmetric schemes only.
struct CensusRow {
  int order = 0;
  int total = 0;
  int stratifiable = 0;
  int commutative = 0;
  int symmetric = 0;
  int primitive = 0;
  int metric = 0;
  int cometric = 0;
  int thin = 0;
  bool operator==(const CensusRow &o) const;
};

CensusRow census_row(const std::vector<AssociationScheme> &schemes);

}  // namespace schurian

#endif
