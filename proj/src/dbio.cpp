#include "schurian/dbio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace schurian {

using detail::Frac;

// --- cyclotomic expressions ---------------------------------------------------

std::complex<double> CycExpr::evaluate() const {
  if (is_approx) return approx_value;
  std::complex<double> acc = 0.0;
  for (const auto &t : terms) {
    double angle = 2.0 * M_PI * static_cast<double>(t.power) / static_cast<double>(t.order);
    acc += t.coeff.to_double() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

namespace {

struct Cursor {
  const std::string &text;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Cursor(const std::string &t) : text(t) {}

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char next() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) next();
  }
  [[noreturn]] void fail(const std::string &msg) const {
    throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    next();
  }
  bool accept(char c) {
    skip_ws();
    if (peek() != c) return false;
    next();
    return true;
  }
  long long integer() {
    skip_ws();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      next();
    } else if (peek() == '+') {
      next();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long long v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (next() - '0');
    return neg ? -v : v;
  }
  double decimal() {
    skip_ws();
    std::size_t start = pos;
    if (peek() == '-' || peek() == '+') next();
    while (!done() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == 'e' ||
                       peek() == 'E' ||
                       ((peek() == '-' || peek() == '+') && (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
      next();
    if (pos == start) fail("expected a decimal number");
    return std::stod(text.substr(start, pos - start));
  }
};

// term := [coeff '*'] 'E' '(' int ')' ['^' int]  |  rational
// where coeff and rational are int['/'int]
CycTerm parse_term(Cursor &c, bool negated) {
  CycTerm t;
  c.skip_ws();
  Frac coeff(1);
  bool have_coeff = false;
  if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
    long long num = c.integer();
    long long den = 1;
    if (c.accept('/')) den = c.integer();
    coeff = Frac(num, den);
    have_coeff = true;
  }
  c.skip_ws();
  bool expect_e = false;
  if (have_coeff) {
    if (c.accept('*')) expect_e = true;
  } else {
    expect_e = true;
  }
  if (expect_e && c.peek() == 'E') {
    c.next();
    c.expect('(');
    t.order = c.integer();
    if (t.order < 1) c.fail("E(n) needs n >= 1");
    c.expect(')');
    t.power = 1;
    if (c.accept('^')) t.power = c.integer();
    if (t.power < 0 || t.power >= t.order) c.fail("E(n)^k needs 0 <= k < n");
    t.coeff = coeff;
  } else if (have_coeff) {
    t.order = 1;
    t.power = 0;
    t.coeff = coeff;
  } else {
    c.fail("expected a term");
  }
  if (negated) t.coeff = Frac(0) - t.coeff;
  return t;
}

CycExpr parse_expr(Cursor &c) {
  CycExpr e;
  c.skip_ws();
  if (c.peek() == '~') {
    c.next();
    e.is_approx = true;
    double re = c.decimal();
    double im = 0.0;
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') {
      std::size_t save = c.pos;
      int sline = c.line, scol = c.col;
      double v = c.decimal();
      if (c.peek() == 'i') {
        c.next();
        im = v;
      } else {
        c.pos = save;
        c.line = sline;
        c.col = scol;
      }
    } else if (c.peek() == 'i') {
      // not produced by the writer, but harmless to reject explicitly
      c.fail("imaginary part needs an explicit coefficient");
    }
    e.approx_value = {re, im};
    return e;
  }
  bool neg = false;
  if (c.accept('-')) neg = true;
  else c.accept('+');
  e.terms.push_back(parse_term(c, neg));
  for (;;) {
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') {
      bool minus = c.next() == '-';
      e.terms.push_back(parse_term(c, minus));
    } else {
      break;
    }
  }
  return e;
}

std::string format_frac(const Frac &f) {
  std::string s = std::to_string(f.num);
  if (f.den != 1) s += "/" + std::to_string(f.den);
  return s;
}

}  // namespace

CycExpr parse_cyc_expr(const std::string &text) {
  Cursor c(text);
  CycExpr e = parse_expr(c);
  c.skip_ws();
  if (!c.done()) c.fail("trailing characters in expression");
  return e;
}

std::string format_cyc_expr(const CycExpr &e) {
  if (e.is_approx) {
    char buf[64];
    std::string out = "~";
    std::snprintf(buf, sizeof buf, "%.12g", e.approx_value.real());
    out += buf;
    if (e.approx_value.imag() != 0.0) {
      std::snprintf(buf, sizeof buf, "%+.12g", e.approx_value.imag());
      out += buf;
      out += "i";
    }
    return out;
  }
  if (e.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto &t : e.terms) {
    Frac c = t.coeff;
    bool neg = c.num < 0;
    Frac mag = neg ? Frac(0) - c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    first = false;
    if (t.order == 1) {
      out += format_frac(mag);
    } else {
      if (!(mag.num == 1 && mag.den == 1)) out += format_frac(mag) + "*";
      out += "E(" + std::to_string(t.order) + ")";
      if (t.power != 1) out += "^" + std::to_string(t.power);
    }
  }
  return out;
}

int kronecker_symbol(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos % 2 == 1) {
    long long am = ((a % 8) + 8) % 8;
    if (am == 3 || am == 5) result = -result;
  }
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long nm = n % 8;
      if (nm == 3 || nm == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

// sqrt(D) for squarefree D as a cyclotomic sum: the Gauss sum of the
// Kronecker character of the fundamental discriminant (D or 4D), halved in
// the 4D case.
std::vector<CycTerm> sqrt_terms(long long D) {
  long long disc, denom;
  if (((D % 4) + 4) % 4 == 1) {
    disc = D;
    denom = 1;
  } else {
    disc = 4 * D;
    denom = 2;
  }
  long long N = disc < 0 ? -disc : disc;
  std::vector<CycTerm> terms;
  for (long long k = 1; k < N; ++k) {
    int chi = kronecker_symbol(disc, k);
    if (chi == 0) continue;
    CycTerm t;
    t.coeff = Frac(chi, denom);
    t.order = N;
    t.power = k;
    terms.push_back(t);
  }
  return terms;
}

}  // namespace

CycExpr algebraic_to_cyc(const AlgebraicValue &v) {
  CycExpr e;
  switch (v.kind) {
    case AlgebraicValue::Kind::Integer:
      e.terms.push_back({Frac(v.num), 1, 0});
      return e;
    case AlgebraicValue::Kind::Rational:
      e.terms.push_back({Frac(v.num, v.den), 1, 0});
      return e;
    case AlgebraicValue::Kind::Quadratic: {
      if (v.num != 0) e.terms.push_back({Frac(v.num, v.den), 1, 0});
      Frac b(v.bnum, v.bden);
      for (CycTerm t : sqrt_terms(v.disc)) {
        t.coeff = t.coeff * b;
        e.terms.push_back(t);
      }
      return e;
    }
    case AlgebraicValue::Kind::Approximate:
      e.is_approx = true;
      e.approx_value = v.approx;
      return e;
  }
  return e;
}

std::string format_algebraic(const AlgebraicValue &v) { return format_cyc_expr(algebraic_to_cyc(v)); }

// --- scheme records -----------------------------------------------------------

namespace {

std::vector<std::vector<long long>> parse_int_matrix(Cursor &c) {
  std::vector<std::vector<long long>> rows;
  c.expect('[');
  if (!c.accept(']')) {
    do {
      c.expect('[');
      std::vector<long long> row;
      if (!c.accept(']')) {
        do {
          row.push_back(c.integer());
        } while (c.accept(','));
        c.expect(']');
      }
      rows.push_back(std::move(row));
    } while (c.accept(','));
    c.expect(']');
  }
  return rows;
}

// a permutation in cycle notation: one or more (..) groups
std::string scan_cycles(Cursor &c) {
  c.skip_ws();
  std::size_t start = c.pos;
  if (c.peek() != '(') c.fail("expected a permutation in cycle notation");
  while (c.peek() == '(') {
    while (!c.done() && c.peek() != ')') c.next();
    c.expect(')');
    c.skip_ws();
  }
  return std::string(c.text.substr(start, c.pos - start));
}

// an expression entry inside T: scan to the next ',' or ']' at depth 0
std::string scan_expr(Cursor &c) {
  c.skip_ws();
  std::size_t start = c.pos;
  int depth = 0;
  while (!c.done()) {
    char ch = c.peek();
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == ',' || ch == ']')) break;
    c.next();
  }
  std::string s(c.text.substr(start, c.pos - start));
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) c.fail("empty table entry");
  return s;
}

}  // namespace

SchemeRecord parse_scheme_line(const std::string &text) {
  Cursor c(text);
  SchemeRecord r;
  c.expect('[');

  // M
  auto mrows = parse_int_matrix(c);
  int n = static_cast<int>(mrows.size());
  if (n == 0) c.fail("empty relation matrix");
  r.matrix.n = n;
  int maxlab = 0;
  for (const auto &row : mrows) {
    if (static_cast<int>(row.size()) != n) c.fail("relation matrix is not square");
    for (long long v : row) {
      if (v < 0 || v > n) c.fail("relation label out of range");
      maxlab = std::max(maxlab, static_cast<int>(v));
    }
  }
  r.matrix.d = maxlab;
  r.matrix.entries.reserve(static_cast<std::size_t>(n) * n);
  for (const auto &row : mrows)
    for (long long v : row) r.matrix.entries.push_back(static_cast<int>(v));
  c.expect(',');

  // S
  c.expect('[');
  if (!c.accept(']')) {
    do {
      std::string cyc = scan_cycles(c);
      try {
        r.aut_generators.push_back(parse_cycles(cyc, n));
      } catch (const std::invalid_argument &e) {
        c.fail(std::string("bad cycle syntax: ") + e.what());
      }
    } while (c.accept(','));
    c.expect(']');
  }
  c.expect(',');

  // x
  r.transitive_id = c.integer();
  c.expect(',');

  // T
  c.expect('[');
  if (!c.accept(']')) {
    do {
      c.expect('[');
      std::vector<CycExpr> row;
      if (!c.accept(']')) {
        do {
          std::string es = scan_expr(c);
          try {
            row.push_back(parse_cyc_expr(es));
          } catch (const ValidationError &e) {
            c.fail(std::string("bad E(n) expression \"") + es + "\": " + e.what());
          }
        } while (c.accept(','));
        c.expect(']');
      }
      r.raw_table.push_back(std::move(row));
    } while (c.accept(','));
    c.expect(']');
  }
  c.expect(',');

  // L
  c.expect('[');
  if (!c.accept(']')) {
    do {
      r.multiplicities.push_back(c.integer());
    } while (c.accept(','));
    c.expect(']');
  }
  c.expect(']');
  c.skip_ws();
  if (!c.done()) c.fail("trailing characters after record");

  if (r.raw_table.size() != r.multiplicities.size())
    c.fail("multiplicity list and character table disagree in length");

  // build the character table from the parsed expressions
  SpectralConfig cfg;
  for (std::size_t row = 0; row < r.raw_table.size(); ++row) {
    std::vector<AlgebraicValue> vals;
    for (const auto &expr : r.raw_table[row]) {
      if (expr.is_approx)
        vals.push_back(AlgebraicValue::approximate(expr.approx_value, 1e-9));
      else
        vals.push_back(recognize_algebraic(expr.evaluate(), cfg));
    }
    r.table.rows.push_back(std::move(vals));
    r.table.multiplicities.push_back(r.multiplicities[row]);
    double deg = r.table.rows.back().empty() ? 1.0 : r.table.rows.back()[0].value().real();
    r.table.degrees.push_back(static_cast<int>(std::llround(deg)));
  }
  return r;
}

std::string write_scheme_line(const SchemeRecord &r) {
  std::ostringstream out;
  out << "[ [ ";
  for (int x = 1; x <= r.matrix.n; ++x) {
    if (x > 1) out << ", ";
    out << "[ ";
    for (int y = 1; y <= r.matrix.n; ++y) {
      if (y > 1) out << ", ";
      out << r.matrix.at(x, y);
    }
    out << " ]";
  }
  out << " ], [ ";
  for (std::size_t i = 0; i < r.aut_generators.size(); ++i) {
    if (i) out << ", ";
    out << format_cycles(r.aut_generators[i]);
  }
  out << " ], " << r.transitive_id << ", [ ";
  // prefer the raw expressions when present (byte-faithful round trip)
  std::size_t rows = r.raw_table.empty() ? r.table.rows.size() : r.raw_table.size();
  for (std::size_t row = 0; row < rows; ++row) {
    if (row) out << ", ";
    out << "[ ";
    if (!r.raw_table.empty()) {
      for (std::size_t i = 0; i < r.raw_table[row].size(); ++i) {
        if (i) out << ", ";
        out << format_cyc_expr(r.raw_table[row][i]);
      }
    } else {
      for (std::size_t i = 0; i < r.table.rows[row].size(); ++i) {
        if (i) out << ", ";
        out << format_algebraic(r.table.rows[row][i]);
      }
    }
    out << " ]";
  }
  out << " ], [ ";
  for (std::size_t i = 0; i < r.multiplicities.size(); ++i) {
    if (i) out << ", ";
    out << r.multiplicities[i];
  }
  out << " ] ]";
  return out.str();
}

void validate_record(const SchemeRecord &r) {
  AssociationScheme s = AssociationScheme::from_relation_matrix(r.matrix);
  for (const Permutation &g : r.aut_generators) {
    if (g.degree() != r.matrix.n) throw ValidationError("generator degree does not match the matrix");
    for (int x = 1; x <= r.matrix.n; ++x)
      for (int y = 1; y <= r.matrix.n; ++y)
        if (r.matrix.at(g(x), g(y)) != r.matrix.at(x, y))
          throw ValidationError("generator " + format_cycles(g) + " does not fix the relations");
  }
  if (static_cast<int>(r.table.rows.size()) > 0) {
    if (r.table.multiplicities != r.multiplicities)
      throw ValidationError("L does not match the character table multiplicities");
    auto check = verify_character_table(s, r.table);
    if (!check.ok) throw ValidationError("character table does not verify: " + check.reason);
  }
}

ClosureRecord parse_closure_line(const std::string &text) {
  Cursor c(text);
  ClosureRecord r;
  c.expect('[');
  r.x = c.integer();
  c.expect(',');
  r.y = c.integer();
  c.expect(']');
  c.skip_ws();
  if (!c.done()) c.fail("trailing characters after pair");
  if (r.x < 1 || r.y < 1) c.fail("identifications must be >= 1");
  return r;
}

std::string write_closure_line(const ClosureRecord &r) {
  return "[" + std::to_string(r.x) + "," + std::to_string(r.y) + "]";
}

// --- database files -----------------------------------------------------------

namespace {

// reads one bracket-balanced chunk per record; tolerates wrapped lines
std::vector<std::string> balanced_chunks(std::istream &in) {
  std::vector<std::string> chunks;
  std::string current;
  int depth = 0;
  std::string line;
  while (std::getline(in, line)) {
    for (char ch : line) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
    }
    if (!current.empty()) current += ' ';
    current += line;
    if (depth == 0) {
      bool blank = current.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) chunks.push_back(current);
      current.clear();
    }
  }
  if (depth != 0) throw ValidationError("unbalanced brackets at end of input");
  return chunks;
}

}  // namespace

std::vector<SchemeRecord> read_scheme_database(std::istream &in) {
  std::vector<SchemeRecord> out;
  for (const auto &chunk : balanced_chunks(in)) out.push_back(parse_scheme_line(chunk));
  return out;
}

std::vector<SchemeRecord> read_scheme_database_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open database file: " + path);
  return read_scheme_database(in);
}

void write_scheme_database(std::ostream &out, const std::vector<SchemeRecord> &records) {
  for (const auto &r : records) out << write_scheme_line(r) << "\n";
}

std::vector<ClosureRecord> read_closure_database(std::istream &in) {
  std::vector<ClosureRecord> out;
  for (const auto &chunk : balanced_chunks(in)) out.push_back(parse_closure_line(chunk));
  return out;
}

std::vector<ClosureRecord> read_closure_database_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open database file: " + path);
  return read_closure_database(in);
}

void write_closure_database(std::ostream &out, const std::vector<ClosureRecord> &records) {
  for (const auto &r : records) out << write_closure_line(r) << "\n";
}

// --- census -------------------------------------------------------------------

bool CensusRow::operator==(const CensusRow &o) const {
  return order == o.order && total == o.total && stratifiable == o.stratifiable &&
         commutative == o.commutative && symmetric == o.symmetric && primitive == o.primitive &&
         metric == o.metric && cometric == o.cometric && thin == o.thin;
}

CensusRow census_row(const std::vector<AssociationScheme> &schemes) {
  CensusRow row;
  if (schemes.empty()) return row;
  row.order = schemes[0].order();
  for (const auto &s : schemes) {
    if (s.order() != row.order) throw ValidationError("census over mixed orders");
    ++row.total;
    if (s.is_stratifiable()) ++row.stratifiable;
    if (s.is_commutative()) ++row.commutative;
    if (s.is_symmetric()) ++row.symmetric;
    if (s.is_primitive()) ++row.primitive;
    if (s.is_thin()) ++row.thin;
    if (is_metric(s)) ++row.metric;
    if (is_cometric(s)) ++row.cometric;
  }
  return row;
}

}  // namespace schurian
