#ifndef SCHURIAN_TEST_FIXTURES_HPP
#define SCHURIAN_TEST_FIXTURES_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "schurian/closure.hpp"
#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"

namespace fixtures {

inline schurian::PermGroup group_of(int degree, std::initializer_list<const char *> cycles) {
  std::vector<schurian::Permutation> gens;
  for (const char *c : cycles) gens.push_back(schurian::parse_cycles(c, degree));
  return schurian::PermGroup(degree, std::move(gens));
}

// complete-graph scheme: 0 on the diagonal, 1 elsewhere
inline schurian::RelationMatrix trivial_matrix(int n) {
  schurian::RelationMatrix m;
  m.n = n;
  m.d = n > 1 ? 1 : 0;
  m.entries.assign(static_cast<std::size_t>(n) * n, 1);
  for (int x = 1; x <= n; ++x) m.at(x, x) = 0;
  return m;
}

inline schurian::AssociationScheme trivial_scheme(int n) {
  return schurian::AssociationScheme::from_relation_matrix(trivial_matrix(n));
}

// pentagon: labels by cyclic distance on 5 points
inline schurian::RelationMatrix pentagon_matrix() {
  schurian::RelationMatrix m;
  m.n = 5;
  m.d = 2;
  m.entries.assign(25, 0);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      if (x == y) continue;
      int fwd = (y - x + 5) % 5;
      int dist = fwd < 5 - fwd ? fwd : 5 - fwd;
      m.entries[x * 5 + y] = dist;
    }
  return m;
}

inline schurian::AssociationScheme pentagon_scheme() {
  return schurian::AssociationScheme::from_relation_matrix(pentagon_matrix());
}

// the order-8 reference record from the database (line 12 of the degree-8
// file): a 3-class non-symmetric commutative scheme
inline const char *order8_sample_line() {
  return "[ [ [ 0, 1, 2, 2, 3, 2, 1, 1 ], [ 2, 0, 2, 1, 1, 3, 1, 2 ], [ 1, 1, 0, 1, 2, 2, 3, 2 ], "
         "[ 1, 2, 2, 0, 2, 1, 1, 3 ], [ 3, 2, 1, 1, 0, 1, 2, 2 ], [ 1, 3, 1, 2, 2, 0, 2, 1 ], "
         "[ 2, 2, 3, 2, 1, 1, 0, 1 ], [ 2, 1, 1, 3, 1, 2, 2, 0 ] ], "
         "[ (1,3,5,7)(2,4,6,8), (1,3,8)(4,5,7) ], 12, "
         "[ [ 1, 3, 3, 1 ], [ 1, E(3)-E(3)^2, -E(3)+E(3)^2, -1 ], [ 1, -E(3)+E(3)^2, E(3)-E(3)^2, -1 ], "
         "[ 1, -1, -1, 1 ] ], [ 1, 2, 2, 3 ] ]";
}

inline schurian::RelationMatrix order8_sample_matrix() {
  const int rows[8][8] = {
      {0, 1, 2, 2, 3, 2, 1, 1}, {2, 0, 2, 1, 1, 3, 1, 2}, {1, 1, 0, 1, 2, 2, 3, 2},
      {1, 2, 2, 0, 2, 1, 1, 3}, {3, 2, 1, 1, 0, 1, 2, 2}, {1, 3, 1, 2, 2, 0, 2, 1},
      {2, 2, 3, 2, 1, 1, 0, 1}, {2, 1, 1, 3, 1, 2, 2, 0}};
  schurian::RelationMatrix m;
  m.n = 8;
  m.d = 3;
  for (auto &row : rows)
    for (int v : row) m.entries.push_back(v);
  return m;
}

inline schurian::AssociationScheme order8_sample_scheme() {
  return schurian::AssociationScheme::from_relation_matrix(order8_sample_matrix());
}

// thin scheme of a regular group action
inline schurian::AssociationScheme thin_scheme(const schurian::PermGroup &regular) {
  return schurian::schurian_scheme(regular);
}

// regular dihedral group of order 8 acting on itself
inline schurian::PermGroup d4_regular() {
  // points 1..8 = e, r, r2, r3, s, rs, r2s, r3s; right multiplication by r and s
  // r: e->r->r2->r3->e, s->? s*r = r^3 s (with s r s = r^-1), so 5 -> 8, 6 -> 5, 7 -> 6, 8 -> 7
  // s: e->s, r->rs, r2->r2s, r3->r3s and back
  return group_of(8, {"(1,2,3,4)(5,8,7,6)", "(1,5)(2,6)(3,7)(4,8)"});
}

inline schurian::PermGroup klein_regular() {
  return group_of(4, {"(1,2)(3,4)", "(1,3)(2,4)"});
}

}  // namespace fixtures

#endif
