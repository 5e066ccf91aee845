#ifndef SCHURIAN_CLOSURE_HPP
#define SCHURIAN_CLOSURE_HPP

#include <optional>
#include <vector>

#include "schurian/canon.hpp"
#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"

namespace schurian {

// Isomorphism certificate: applying (point_map, class_map) to the source
// relation matrix yields the target matrix exactly.
struct IsoCertificate {
  Permutation point_map;
  std::vector<int> class_map;
};

// K(G): the orbital scheme of a transitive group. Classes are labelled in
// the deterministic orbital order, diagonal first. Throws
// std::invalid_argument if g is not transitive.
AssociationScheme schurian_scheme(const PermGroup &g);

// Aut(K(G)); contains g, idempotent.
PermGroup two_closure(const PermGroup &g);

// True iff every generator of Aut(K(g)) sifts into g (containment suffices
// since g <= Aut(K(g)) always holds).
bool is_two_closed(const PermGroup &g);

// Certificate mapping a onto b, composed from the two canonicalizations and
// re-verified before return; absent when the canonical forms differ.
std::optional<IsoCertificate> isomorphism(const AssociationScheme &a, const AssociationScheme &b);

// Direct transport check of a certificate.
bool verify_isomorphism(const AssociationScheme &a, const AssociationScheme &b,
                        const IsoCertificate &cert);

}  // namespace schurian

#endif
