#ifndef SCHURIAN_ORACLE_HPP
#define SCHURIAN_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "schurian/closure.hpp"
#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"

namespace schurian::oracle {

// Exhaustive automorphism search over all n! permutations (n <= 8).
PermGroup brute_aut(const AssociationScheme &s);

// Exhaustive isomorphism search over point and class bijections (n <= 6).
std::optional<IsoCertificate> brute_iso(const AssociationScheme &a, const AssociationScheme &b);

// Full multiplication closure of a generator set; throws when the element
// budget is exceeded. Result sorted by image tuples.
std::vector<Permutation> element_closure(int degree, const std::vector<Permutation> &gens,
                                         std::size_t max_elements = 1000000);

// One representative per conjugacy class of transitive subgroups of S_n
// (n <= 8), found by climbing the subgroup lattice: seeds are the trivial
// group and the perfect subgroups, extended by normalizing elements
// (cyclic quotients), deduplicated first by exact element set and then up
// to conjugacy. Degrees 7 and 8 take seconds rather than milliseconds.
std::vector<PermGroup> transitive_subgroups(int n);

}  // namespace schurian::oracle

#endif
