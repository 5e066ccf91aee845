#include "schurian/closure.hpp"

#include <stdexcept>

namespace schurian {

AssociationScheme schurian_scheme(const PermGroup &g) {
  PairPartition part = g.orbitals();
  RelationMatrix m;
  m.n = part.n;
  m.d = part.classes - 1;
  m.entries = part.label;
  return AssociationScheme::from_relation_matrix(std::move(m));
}

PermGroup two_closure(const PermGroup &g) {
  if (!g.is_transitive()) throw std::invalid_argument("2-closure requires a transitive group");
  return aut_group(schurian_scheme(g));
}

bool is_two_closed(const PermGroup &g) {
  PermGroup closure = two_closure(g);
  for (const Permutation &p : closure.generators())
    if (!g.contains(p)) return false;
  return true;
}

bool verify_isomorphism(const AssociationScheme &a, const AssociationScheme &b,
                        const IsoCertificate &cert) {
  if (a.order() != b.order() || a.classes() != b.classes()) return false;
  const RelationMatrix &ma = a.relation_matrix();
  const RelationMatrix &mb = b.relation_matrix();
  for (int x = 1; x <= ma.n; ++x)
    for (int y = 1; y <= ma.n; ++y)
      if (mb.at(cert.point_map(x), cert.point_map(y)) != cert.class_map[ma.at(x, y)]) return false;
  return true;
}

std::optional<IsoCertificate> isomorphism(const AssociationScheme &a, const AssociationScheme &b) {
  if (a.order() != b.order() || a.classes() != b.classes()) return std::nullopt;
  CanonicalForm ca = canonical_form(a);
  CanonicalForm cb = canonical_form(b);
  if (!(ca.matrix == cb.matrix)) return std::nullopt;

  // a --(ca)--> C --(cb^-1)--> b
  IsoCertificate cert;
  cert.point_map = ca.point_map * cb.point_map.inverse();
  cert.class_map.resize(a.classes() + 1);
  std::vector<int> cb_inv(b.classes() + 1);
  for (int c = 0; c <= b.classes(); ++c) cb_inv[cb.colour_map[c]] = c;
  for (int c = 0; c <= a.classes(); ++c) cert.class_map[c] = cb_inv[ca.colour_map[c]];

  if (!verify_isomorphism(a, b, cert))
    throw std::logic_error("canonicalization produced an invalid isomorphism certificate");
  return cert;
}

}  // namespace schurian
