#include "doctest.h"

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "schurian/canon.hpp"
#include "schurian/oracle.hpp"

using namespace schurian;
using namespace fixtures;

namespace {

std::vector<AssociationScheme> small_corpus() {
  std::vector<AssociationScheme> out;
  out.push_back(trivial_scheme(4));
  out.push_back(trivial_scheme(5));
  out.push_back(pentagon_scheme());
  out.push_back(order8_sample_scheme());
  out.push_back(thin_scheme(group_of(4, {"(1,2,3,4)"})));
  out.push_back(thin_scheme(klein_regular()));
  out.push_back(thin_scheme(group_of(6, {"(1,2,3,4,5,6)"})));
  out.push_back(thin_scheme(d4_regular()));
  out.push_back(schurian_scheme(group_of(5, {"(1,2,3,4,5)", "(2,5)(3,4)"})));  // pentagon again
  out.push_back(schurian_scheme(group_of(6, {"(1,2,3,4,5,6)", "(2,6)(3,5)"})));
  out.push_back(schurian_scheme(group_of(7, {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"})));
  return out;
}

std::pair<std::vector<int>, std::vector<int>> random_relabeling(int n, int d, std::mt19937 &rng) {
  std::vector<int> sigma_f(n), sigma_g(d + 1);
  for (int i = 0; i < n; ++i) sigma_f[i] = i + 1;
  std::shuffle(sigma_f.begin(), sigma_f.end(), rng);
  for (int i = 0; i <= d; ++i) sigma_g[i] = i;
  std::shuffle(sigma_g.begin() + 1, sigma_g.end(), rng);
  return {sigma_f, sigma_g};
}

}  // namespace

TEST_CASE("encoding layer counts") {
  CHECK(encode_scheme(trivial_scheme(4), false).layers == 1);   // ceil(log2(2))
  CHECK(encode_scheme(order8_sample_scheme(), false).layers == 2);  // ceil(log2(4))
  CHECK(encode_scheme(pentagon_scheme(), false).layers == 2);
  CHECK(encode_scheme(order8_sample_scheme(), true).layers == 3);   // one per colour
}

TEST_CASE("encode/decode round trip") {
  for (const AssociationScheme &s : small_corpus()) {
    CHECK(encode_scheme(s, false).decode() == s.relation_matrix());
    CHECK(encode_scheme(s, true).decode() == s.relation_matrix());
  }
}

TEST_CASE("coloured triangle regularity of the encoding input") {
  // the number of two-coloured directed paths over an arc depends only on
  // the arc's colour
  for (const AssociationScheme &s : small_corpus()) {
    const RelationMatrix &m = s.relation_matrix();
    const int n = s.order(), d = s.classes();
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) {
        std::vector<int> per_colour(d + 1, -1);
        for (int x = 1; x <= n; ++x)
          for (int y = 1; y <= n; ++y) {
            int count = 0;
            for (int z = 1; z <= n; ++z)
              if (m.at(x, z) == i && m.at(z, y) == j) ++count;
            int c = m.at(x, y);
            if (per_colour[c] < 0) per_colour[c] = count;
            CHECK(per_colour[c] == count);
          }
      }
  }
}

TEST_CASE("refinement is idempotent and equitable") {
  for (const AssociationScheme &s : small_corpus()) {
    LayeredColouredGraph enc = encode_scheme(s, false);
    OrderedPartition p = refine(enc.graph, OrderedPartition::from_colours(enc.graph));
    OrderedPartition q = refine(enc.graph, p);
    CHECK(p.cells == q.cells);
    // equitable: neighbour counts into every cell constant on each cell
    for (const auto &cell : p.cells) {
      for (const auto &other : p.cells) {
        int want = -1;
        for (int v : cell) {
          int count = 0;
          for (int u : enc.graph.adj[v])
            if (std::find(other.begin(), other.end(), u) != other.end()) ++count;
          if (want < 0) want = count;
          CHECK(want == count);
        }
      }
    }
  }
}

TEST_CASE("complete-graph encoding refines to colour classes only") {
  LayeredColouredGraph enc = encode_scheme(trivial_scheme(5), false);
  OrderedPartition unit = OrderedPartition::from_colours(enc.graph);
  OrderedPartition p = refine(enc.graph, unit);
  CHECK(p.cells == unit.cells);  // already equitable
}

TEST_CASE("aut group sizes") {
  CHECK(aut_group(trivial_scheme(4)).order() == BigUint(24));
  CHECK(aut_group(pentagon_scheme()).order() == BigUint(10));
  PermGroup sample = aut_group(order8_sample_scheme());
  CHECK(sample.order() == BigUint(24));
  PermGroup g = group_of(8, {"(1,3,5,7)(2,4,6,8)", "(1,3,8)(4,5,7)"});
  CHECK(same_group(sample, g));
}

TEST_CASE("aut generators fix every relation class") {
  for (const AssociationScheme &s : small_corpus()) {
    PermGroup aut = aut_group(s);
    const RelationMatrix &m = s.relation_matrix();
    for (const Permutation &p : aut.generators())
      for (int x = 1; x <= s.order(); ++x)
        for (int y = 1; y <= s.order(); ++y) CHECK(m.at(p(x), p(y)) == m.at(x, y));
  }
}

TEST_CASE("aut agrees with the exhaustive oracle") {
  for (const AssociationScheme &s : small_corpus()) {
    if (s.order() > 7) continue;
    CHECK(same_group(aut_group(s), oracle::brute_aut(s)));
  }
}

TEST_CASE("G embeds in the automorphism group of its orbital scheme") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 5);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    std::shuffle(img.begin(), img.end(), rng);
    Permutation a(img);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation b(img);
    PermGroup g(n, {a, b});
    if (!g.is_transitive()) continue;
    PermGroup aut = aut_group(schurian_scheme(g));
    for (const Permutation &p : g.generators()) CHECK(aut.contains(p));
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(43);
  for (const AssociationScheme &s : small_corpus()) {
    CanonicalForm base = canonical_form(s);
    // the returned maps transport the input to the canonical matrix
    CHECK(relabel(s.relation_matrix(), base.point_map.images(), base.colour_map) == base.matrix);
    for (int trial = 0; trial < 8; ++trial) {
      auto [sigma_f, sigma_g] = random_relabeling(s.order(), s.classes(), rng);
      AssociationScheme moved =
          AssociationScheme::from_relation_matrix(relabel(s.relation_matrix(), sigma_f, sigma_g));
      CanonicalForm cf = canonical_form(moved);
      CHECK(cf.matrix == base.matrix);
      CHECK(relabel(moved.relation_matrix(), cf.point_map.images(), cf.colour_map) == cf.matrix);
    }
  }
}

TEST_CASE("canonical form is a fixed point") {
  for (const AssociationScheme &s : small_corpus()) {
    CanonicalForm cf = canonical_form(s);
    AssociationScheme canon = AssociationScheme::from_relation_matrix(cf.matrix);
    CanonicalForm again = canonical_form(canon);
    CHECK(again.matrix == cf.matrix);
    CHECK(again.point_map.is_identity());
    for (int c = 0; c <= s.classes(); ++c) CHECK(again.colour_map[c] == c);
  }
}

TEST_CASE("two pentagon constructions canonicalize identically") {
  AssociationScheme from_group = schurian_scheme(group_of(5, {"(1,2,3,4,5)", "(2,5)(3,4)"}));
  AssociationScheme by_hand = pentagon_scheme();
  CHECK(canonical_form(from_group).matrix == canonical_form(by_hand).matrix);
}

TEST_CASE("algebraic colour candidates") {
  auto triv = algebraic_colour_candidates(trivial_scheme(5));
  REQUIRE(triv.size() == 1);

  auto pent = algebraic_colour_candidates(pentagon_scheme());
  CHECK(pent.size() == 2);  // identity and the swap of the two classes

  // closure under composition
  for (const AssociationScheme &s : small_corpus()) {
    if (s.classes() > 7) continue;
    auto cands = algebraic_colour_candidates(s);
    for (const auto &a : cands)
      for (const auto &b : cands) {
        std::vector<int> ab(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ab[i] = b[a[i]];
        CHECK(std::find(cands.begin(), cands.end(), ab) != cands.end());
      }
  }
}

TEST_CASE("algebraic canonicalization route cross-checks the colour-vertex route") {
  // the two routes pick their own representatives; they must be invariant
  // individually and induce the same isomorphism classes
  std::mt19937 rng(47);
  auto corpus = small_corpus();
  std::vector<RelationMatrix> via_device, via_algebraic;
  for (const AssociationScheme &s : corpus) {
    if (s.classes() > 8) continue;
    CanonicalForm b = canonical_form_via_algebraic(s);
    CHECK(relabel(s.relation_matrix(), b.point_map.images(), b.colour_map) == b.matrix);
    auto [sigma_f, sigma_g] = random_relabeling(s.order(), s.classes(), rng);
    AssociationScheme moved =
        AssociationScheme::from_relation_matrix(relabel(s.relation_matrix(), sigma_f, sigma_g));
    CHECK(canonical_form_via_algebraic(moved).matrix == b.matrix);
    via_device.push_back(canonical_form(s).matrix);
    via_algebraic.push_back(b.matrix);
  }
  for (std::size_t i = 0; i < via_device.size(); ++i)
    for (std::size_t j = i + 1; j < via_device.size(); ++j)
      CHECK((via_device[i] == via_device[j]) == (via_algebraic[i] == via_algebraic[j]));
}

TEST_CASE("individualizing a pentagon point discretizes to the stabilizer") {
  // after individualizing one point vertex, refinement of the pentagon
  // encoding leaves exactly the cells fixed by the dihedral point stabilizer
  LayeredColouredGraph enc = encode_scheme(pentagon_scheme(), false);
  OrderedPartition root = refine(enc.graph, OrderedPartition::from_colours(enc.graph));
  OrderedPartition split;
  for (const auto &cell : root.cells) {
    if (std::find(cell.begin(), cell.end(), enc.point_vertex(0)) != cell.end() && cell.size() > 1) {
      split.cells.push_back({enc.point_vertex(0)});
      std::vector<int> rest;
      for (int v : cell)
        if (v != enc.point_vertex(0)) rest.push_back(v);
      split.cells.push_back(rest);
    } else {
      split.cells.push_back(cell);
    }
  }
  OrderedPartition refined = refine(enc.graph, split);
  // the stabilizer of a pentagon vertex is generated by the reflection:
  // point cells must be {0} and reflected pairs
  std::vector<std::vector<int>> point_cells;
  for (const auto &cell : refined.cells) {
    std::vector<int> pts;
    for (int v : cell)
      if (v < 5) pts.push_back(v);
    if (!pts.empty()) point_cells.push_back(pts);
  }
  REQUIRE(point_cells.size() == 3);
  CHECK(point_cells[0] == std::vector<int>{0});
  for (std::size_t i = 1; i < point_cells.size(); ++i) CHECK(point_cells[i].size() == 2);
}
