#include "doctest.h"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "schurian/closure.hpp"
#include "schurian/oracle.hpp"

using namespace schurian;
using namespace fixtures;

TEST_CASE("schurian schemes of standard groups") {
  // 2-transitive: trivial scheme
  AssociationScheme s5 = schurian_scheme(group_of(5, {"(1,2)", "(1,2,3,4,5)"}));
  CHECK(s5.classes() == 1);

  // regular cyclic: thin
  AssociationScheme z5 = schurian_scheme(group_of(5, {"(1,2,3,4,5)"}));
  CHECK(z5.classes() == 4);
  CHECK(z5.is_thin());

  // dihedral: the pentagon scheme
  AssociationScheme d5 = schurian_scheme(group_of(5, {"(1,2,3,4,5)", "(2,5)(3,4)"}));
  CHECK(d5.classes() == 2);
  CHECK(canonical_form(d5).matrix == canonical_form(pentagon_scheme()).matrix);

  CHECK_THROWS_AS(schurian_scheme(group_of(4, {"(1,2)"})), std::invalid_argument);
}

TEST_CASE("two-closure examples") {
  // A5 is 2-transitive, so its orbital scheme is trivial and the closure is S5
  PermGroup a5 = group_of(5, {"(1,2,3)", "(3,4,5)"});
  REQUIRE(a5.order() == BigUint(60));
  PermGroup closed = two_closure(a5);
  CHECK(closed.order() == BigUint(120));
  CHECK_FALSE(is_two_closed(a5));

  PermGroup s4 = group_of(4, {"(1,2)", "(1,2,3,4)"});
  CHECK(same_group(two_closure(s4), s4));
  CHECK(is_two_closed(s4));

  PermGroup z6 = group_of(6, {"(1,2,3,4,5,6)"});
  CHECK(two_closure(z6).order() == BigUint(6));
  CHECK(is_two_closed(z6));

  PermGroup d5 = group_of(5, {"(1,2,3,4,5)", "(2,5)(3,4)"});
  CHECK(is_two_closed(d5));
}

TEST_CASE("closure laws on small random transitive groups") {
  std::mt19937 rng(53);
  int tested = 0;
  for (int trial = 0; trial < 60 && tested < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    Permutation a(img);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation b(img);
    PermGroup g(n, {a, b});
    if (!g.is_transitive()) continue;
    ++tested;
    PermGroup closure = two_closure(g);
    for (const Permutation &p : g.generators()) CHECK(closure.contains(p));
    PermGroup twice = two_closure(closure);
    CHECK(same_group(twice, closure));
    CHECK(is_two_closed(g) == (g.order() == closure.order()));
    // K(G) = K(closure(G)): identical relation matrices
    CHECK(schurian_scheme(g).relation_matrix() == schurian_scheme(closure).relation_matrix());
  }
  CHECK(tested >= 10);
}

TEST_CASE("isomorphism certificates") {
  AssociationScheme pent = pentagon_scheme();

  // relabeled copy: certificate present and verified
  std::mt19937 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> sigma_f(5), sigma_g{0, 1, 2};
    for (int i = 0; i < 5; ++i) sigma_f[i] = i + 1;
    std::shuffle(sigma_f.begin(), sigma_f.end(), rng);
    std::shuffle(sigma_g.begin() + 1, sigma_g.end(), rng);
    AssociationScheme moved =
        AssociationScheme::from_relation_matrix(relabel(pent.relation_matrix(), sigma_f, sigma_g));
    auto cert = isomorphism(pent, moved);
    REQUIRE(cert.has_value());
    CHECK(verify_isomorphism(pent, moved, *cert));
  }

  // class-count mismatch
  CHECK_FALSE(isomorphism(pent, trivial_scheme(5)).has_value());

  // identical schemes
  auto self = isomorphism(pent, pent);
  REQUIRE(self.has_value());
  CHECK(verify_isomorphism(pent, pent, *self));
}

TEST_CASE("conjugate orbital schemes and closure transport") {
  // per the classification workflow: K(G) iso K(G^sigma), and conjugating
  // Aut(K(G)) by the point map gives the automorphism group of the image
  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    PermGroup g = group_of(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"});
    std::vector<int> img(6);
    for (int i = 0; i < 6; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    Permutation sigma(img);
    PermGroup conj = g.conjugate(sigma);
    AssociationScheme k1 = schurian_scheme(g);
    AssociationScheme k2 = schurian_scheme(conj);
    auto cert = isomorphism(k1, k2);
    REQUIRE(cert.has_value());
    CHECK(verify_isomorphism(k1, k2, *cert));
    PermGroup aut2 = aut_group(k2);
    PermGroup transported = aut_group(k1).conjugate(cert->point_map);
    CHECK(same_group(aut2, transported));
  }
}

TEST_CASE("isomorphism agrees with the exhaustive oracle") {
  std::vector<AssociationScheme> corpus;
  corpus.push_back(trivial_scheme(5));
  corpus.push_back(pentagon_scheme());
  corpus.push_back(thin_scheme(group_of(5, {"(1,2,3,4,5)"})));
  corpus.push_back(thin_scheme(group_of(6, {"(1,2,3,4,5,6)"})));
  corpus.push_back(thin_scheme(klein_regular()));
  corpus.push_back(schurian_scheme(group_of(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"})));
  corpus.push_back(trivial_scheme(6));
  for (const auto &a : corpus)
    for (const auto &b : corpus) {
      if (a.order() > 6 || b.order() > 6) continue;
      auto fast = isomorphism(a, b);
      auto slow = oracle::brute_iso(a, b);
      CHECK(fast.has_value() == slow.has_value());
      if (fast) CHECK(verify_isomorphism(a, b, *fast));
      if (slow) CHECK(verify_isomorphism(a, b, *slow));
    }
}
