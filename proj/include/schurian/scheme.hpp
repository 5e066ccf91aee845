#ifndef SCHURIAN_SCHEME_HPP
#define SCHURIAN_SCHEME_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurian {

// Raised when input data fails a structural contract (axiom violation,
// malformed file, inconsistent record); the message names the witness.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
};

// n x n matrix of relation labels in {0..d}; label 0 is the diagonal.
struct RelationMatrix {
  int n = 0;
  int d = 0;
  std::vector<int> entries;  // row-major

  int at(int x, int y) const { return entries[(x - 1) * static_cast<std::size_t>(n) + (y - 1)]; }
  int &at(int x, int y) { return entries[(x - 1) * static_cast<std::size_t>(n) + (y - 1)]; }

  bool operator==(const RelationMatrix &o) const { return n == o.n && d == o.d && entries == o.entries; }
  bool operator<(const RelationMatrix &o) const;
};

// Relation-matrix text format: first line "n d", then n rows of n labels.
RelationMatrix read_relation_matrix(std::istream &in);
RelationMatrix read_relation_matrix_file(const std::string &path);
void write_relation_matrix(std::ostream &out, const RelationMatrix &m);

// A verified association scheme: relation matrix plus converse map,
// valencies and the full intersection-number tensor. Immutable.
class AssociationScheme {
public:
  // Verifies the scheme axioms and populates the derived data. Throws
  // ValidationError naming the witnessing entry on failure.
  static AssociationScheme from_relation_matrix(RelationMatrix m);

  int order() const { return rel_.n; }
  int classes() const { return rel_.d; }
  const RelationMatrix &relation_matrix() const { return rel_; }

  int converse(int i) const { return converse_[i]; }
  int valency(int i) const { return valencies_[i]; }
  const std::vector<int> &valencies() const { return valencies_; }

  // p_{ij}^k
  int p(int i, int j, int k) const {
    int m = rel_.d + 1;
    return tensor_[(static_cast<std::size_t>(i) * m + j) * m + k];
  }
  const std::vector<int> &tensor() const { return tensor_; }

  bool is_symmetric() const;
  bool is_commutative() const;
  bool is_thin() const { return rel_.d == rel_.n - 1; }
  bool is_primitive() const;

  // Classes merged with their converses, relabelled by smallest member
  // (diagonal stays 0).
  RelationMatrix symmetrization() const;
  bool is_stratifiable() const;

private:
  AssociationScheme() = default;
  RelationMatrix rel_;
  std::vector<int> converse_;
  std::vector<int> valencies_;
  std::vector<int> tensor_;
};

// Applies a point map and a class map to a relation matrix:
// out[sigma_f(x)][sigma_f(y)] = sigma_g(m[x][y]). Either map may be empty
// to mean identity. sigma_f is given as 1-based images, sigma_g as a
// 0-based vector over {0..d} with sigma_g[0] == 0.
RelationMatrix relabel(const RelationMatrix &m, const std::vector<int> &sigma_f,
                       const std::vector<int> &sigma_g);

}  // namespace schurian

#endif
