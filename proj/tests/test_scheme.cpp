#include "doctest.h"

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "schurian/scheme.hpp"

using namespace schurian;
using namespace fixtures;

namespace {

// exact integer check of A_i A_j = sum_k p_{ij}^k A_k
void check_algebra_products(const AssociationScheme &s) {
  const int n = s.order();
  const int d = s.classes();
  const RelationMatrix &m = s.relation_matrix();
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j)
      for (int x = 1; x <= n; ++x)
        for (int y = 1; y <= n; ++y) {
          int prod = 0;
          for (int z = 1; z <= n; ++z)
            if (m.at(x, z) == i && m.at(z, y) == j) ++prod;
          CHECK(prod == s.p(i, j, m.at(x, y)));
        }
}

}  // namespace

TEST_CASE("order-8 sample matrix validates") {
  AssociationScheme s = order8_sample_scheme();
  CHECK(s.order() == 8);
  CHECK(s.classes() == 3);
  CHECK(s.converse(0) == 0);
  CHECK(s.converse(1) == 2);
  CHECK(s.converse(2) == 1);
  CHECK(s.converse(3) == 3);
  CHECK(s.valencies() == std::vector<int>{1, 3, 3, 1});
}

TEST_CASE("trivial scheme") {
  AssociationScheme s = trivial_scheme(4);
  CHECK(s.classes() == 1);
  CHECK(s.valency(1) == 3);
  CHECK(s.is_symmetric());
  CHECK(s.is_primitive());
  // p_{11}^1 = n-2 in the complete graph
  CHECK(trivial_scheme(5).p(1, 1, 1) == 3);
}

TEST_CASE("pentagon scheme") {
  AssociationScheme s = pentagon_scheme();
  CHECK(s.classes() == 2);
  CHECK(s.valencies() == std::vector<int>{1, 2, 2});
  CHECK(s.p(1, 1, 2) == 1);
  CHECK(s.p(1, 1, 1) == 0);
  CHECK(s.is_symmetric());
  CHECK(s.is_primitive());
}

TEST_CASE("identity relation intersection numbers") {
  for (const AssociationScheme &s : {pentagon_scheme(), order8_sample_scheme(), trivial_scheme(6)})
    for (int j = 0; j <= s.classes(); ++j)
      for (int k = 0; k <= s.classes(); ++k) CHECK(s.p(0, j, k) == (j == k ? 1 : 0));
}

TEST_CASE("algebra products hold exactly") {
  check_algebra_products(pentagon_scheme());
  check_algebra_products(order8_sample_scheme());
  check_algebra_products(trivial_scheme(5));
  check_algebra_products(thin_scheme(d4_regular()));
}

TEST_CASE("transpose consistency and valency row counts") {
  for (const AssociationScheme &s :
       {pentagon_scheme(), order8_sample_scheme(), thin_scheme(d4_regular()), trivial_scheme(7)}) {
    const int d = s.classes();
    long long total = 0;
    for (int i = 0; i <= d; ++i) {
      total += s.valency(i);
      CHECK(s.valency(i) == s.valency(s.converse(i)));
    }
    CHECK(total == s.order());
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j)
        for (int k = 0; k <= d; ++k)
          CHECK(s.p(i, j, k) == s.p(s.converse(j), s.converse(i), s.converse(k)));
    // every row holds label i exactly k_i times
    for (int x = 1; x <= s.order(); ++x) {
      std::vector<int> count(d + 1, 0);
      for (int y = 1; y <= s.order(); ++y) ++count[s.relation_matrix().at(x, y)];
      for (int i = 0; i <= d; ++i) CHECK(count[i] == s.valency(i));
    }
  }
}

TEST_CASE("validation rejects broken matrices") {
  RelationMatrix bad = trivial_matrix(4);
  bad.at(2, 2) = 1;  // diagonal violation
  CHECK_THROWS_AS(AssociationScheme::from_relation_matrix(bad), ValidationError);

  bad = trivial_matrix(4);
  bad.at(1, 2) = 0;  // 0 off the diagonal
  CHECK_THROWS_AS(AssociationScheme::from_relation_matrix(bad), ValidationError);

  bad = pentagon_matrix();
  bad.d = 3;  // label 3 never occurs
  CHECK_THROWS_AS(AssociationScheme::from_relation_matrix(bad), ValidationError);

  // converse failure: transpose of one class is not a single class
  RelationMatrix conv;
  conv.n = 3;
  conv.d = 2;
  conv.entries = {0, 1, 1, 2, 0, 1, 2, 2, 0};
  CHECK_THROWS_AS(AssociationScheme::from_relation_matrix(conv), ValidationError);
}

TEST_CASE("flip fuzzing breaks axiom four") {
  std::mt19937 rng(31);
  // needs d >= 2 so a flip can land on a different nonzero label
  auto matrices = {pentagon_matrix(), order8_sample_matrix()};
  for (const RelationMatrix &m : matrices) {
    int rejected = 0, attempts = 0;
    for (int trial = 0; trial < 60; ++trial) {
      RelationMatrix mm = m;
      int x = 1 + static_cast<int>(rng() % m.n);
      int y = 1 + static_cast<int>(rng() % m.n);
      if (x == y) continue;
      int was = mm.at(x, y);
      int to = 1 + static_cast<int>(rng() % m.d);
      if (to == was) continue;
      mm.at(x, y) = to;
      ++attempts;
      try {
        AssociationScheme::from_relation_matrix(mm);
      } catch (const ValidationError &) {
        ++rejected;
      }
    }
    CHECK(attempts > 0);
    CHECK(rejected == attempts);  // a single flipped entry never survives here
  }
}

TEST_CASE("symmetric and commutative predicates") {
  CHECK(pentagon_scheme().is_symmetric());
  CHECK_FALSE(order8_sample_scheme().is_symmetric());
  CHECK(order8_sample_scheme().is_commutative());

  AssociationScheme z3 = thin_scheme(group_of(3, {"(1,2,3)"}));
  CHECK_FALSE(z3.is_symmetric());
  CHECK(z3.is_commutative());

  AssociationScheme d4 = thin_scheme(d4_regular());
  CHECK_FALSE(d4.is_commutative());

  // symmetric implies commutative on the corpus
  for (const AssociationScheme &s : {pentagon_scheme(), trivial_scheme(6)}) {
    REQUIRE(s.is_symmetric());
    CHECK(s.is_commutative());
  }
}

TEST_CASE("thin predicate") {
  CHECK(thin_scheme(group_of(4, {"(1,2,3,4)"})).is_thin());
  CHECK_FALSE(pentagon_scheme().is_thin());
  CHECK_FALSE(order8_sample_scheme().is_thin());
}

TEST_CASE("primitivity") {
  CHECK(pentagon_scheme().is_primitive());
  CHECK_FALSE(thin_scheme(group_of(4, {"(1,2,3,4)"})).is_primitive());
  for (int n : {2, 3, 5, 8}) CHECK(trivial_scheme(n).is_primitive());
}

TEST_CASE("symmetrization") {
  AssociationScheme s = pentagon_scheme();
  CHECK(s.symmetrization() == s.relation_matrix());

  AssociationScheme z3 = thin_scheme(group_of(3, {"(1,2,3)"}));
  RelationMatrix merged = z3.symmetrization();
  CHECK(merged.d == 1);
  CHECK(AssociationScheme::from_relation_matrix(merged).classes() == 1);

  RelationMatrix s8 = order8_sample_scheme().symmetrization();
  CHECK(s8.d == 2);  // classes {1,2} merge, {3} stays
}

TEST_CASE("stratifiability") {
  CHECK(pentagon_scheme().is_stratifiable());
  CHECK(order8_sample_scheme().is_stratifiable());
  CHECK(thin_scheme(group_of(3, {"(1,2,3)"})).is_stratifiable());
  // regular D4 is the classic failure
  CHECK_FALSE(thin_scheme(d4_regular()).is_stratifiable());
  // commutative implies stratifiable
  for (const AssociationScheme &s : {order8_sample_scheme(), pentagon_scheme(), trivial_scheme(5)}) {
    REQUIRE(s.is_commutative());
    CHECK(s.is_stratifiable());
  }
}

TEST_CASE("order one scheme") {
  RelationMatrix m;
  m.n = 1;
  m.d = 0;
  m.entries = {0};
  AssociationScheme s = AssociationScheme::from_relation_matrix(m);
  CHECK(s.classes() == 0);
  CHECK(s.is_symmetric());
  CHECK(s.is_commutative());
  CHECK(s.is_primitive());
  CHECK(s.is_stratifiable());
}

TEST_CASE("matrix text format round trip") {
  std::stringstream ss;
  write_relation_matrix(ss, pentagon_matrix());
  RelationMatrix back = read_relation_matrix(ss);
  CHECK(back == pentagon_matrix());

  std::stringstream bad("3");
  CHECK_THROWS_AS(read_relation_matrix(bad), ValidationError);
}

TEST_CASE("relabel transports classes") {
  RelationMatrix m = pentagon_matrix();
  std::vector<int> sigma_f = parse_cycles("(1,2,3,4,5)", 5).images();
  std::vector<int> sigma_g = {0, 2, 1};
  RelationMatrix moved = relabel(m, sigma_f, sigma_g);
  for (int x = 1; x <= 5; ++x)
    for (int y = 1; y <= 5; ++y) CHECK(moved.at(sigma_f[x - 1], sigma_f[y - 1]) == sigma_g[m.at(x, y)]);
  CHECK(AssociationScheme::from_relation_matrix(moved).classes() == 2);
}
