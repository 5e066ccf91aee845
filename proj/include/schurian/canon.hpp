#ifndef SCHURIAN_CANON_HPP
#define SCHURIAN_CANON_HPP

#include <cstdint>
#include <vector>

#include "schurian/perm.hpp"
#include "schurian/scheme.hpp"

namespace schurian {

// Undirected vertex-coloured graph; vertices 0-based, colours contiguous
// from 0.
struct ColouredGraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> colour;

  explicit ColouredGraph(int v = 0) : vertex_count(v), adj(v), colour(v, 0) {}
  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  void sort_adjacency();
};

// Encoding of an edge-coloured complete digraph as a vertex-coloured graph.
//
// Every scheme point gets one point vertex plus source/target copies per
// layer; the copies hang off the point vertex in a chain. Without colour
// exchange there are ceil(log2(d+1)) bit-layers and an arc of colour c adds
// the edge source(u, j) -- target(v, j) for every set bit j of c. With
// colour exchange there is one layer per colour, all source (resp. target)
// copies share a single vertex colour, and one extra vertex per relation
// colour ties its layer together; those colour vertices share one colour
// class so the labeling engine may interchange them (colour 0, the
// diagonal, stays pinned by construction).
struct LayeredColouredGraph {
  ColouredGraph graph;
  int n = 0;
  int d = 0;
  int layers = 0;
  bool colour_exchange = false;

  int point_vertex(int v) const { return v; }                          // v in 0..n-1
  int source_vertex(int v, int layer) const { return n + layer * n + v; }
  int target_vertex(int v, int layer) const { return n + (layers + layer) * n + v; }
  int colour_vertex(int c) const { return n + 2 * layers * n + (c - 1); }  // c in 1..d

  // Reconstructs the relation matrix from the edges; exact inverse of the
  // encoding.
  RelationMatrix decode() const;
};

LayeredColouredGraph encode_scheme(const AssociationScheme &s, bool allow_colour_exchange);
LayeredColouredGraph encode_matrix(const RelationMatrix &m, bool allow_colour_exchange);

// Ordered partition of the vertex set into non-empty cells.
struct OrderedPartition {
  std::vector<std::vector<int>> cells;

  static OrderedPartition from_colours(const ColouredGraph &g);
  bool is_discrete() const;
};

// Coarsest equitable refinement of p: every cell ends up with a constant
// neighbour count into every other cell. Deterministic splitting order.
OrderedPartition refine(const ColouredGraph &g, OrderedPartition p);

// Individualization-refinement search over a coloured graph. One engine
// instance per task; not reusable.
class LabelingEngine {
public:
  explicit LabelingEngine(const ColouredGraph &g);

  struct Result {
    std::vector<int> canonical_labeling;            // vertex -> position (canonical mode)
    std::vector<std::vector<int>> automorphisms;    // generators, vertex -> vertex (0-based)
    std::uint64_t nodes_visited = 0;
  };

  Result run(bool want_canonical);

private:
  struct Leaf {
    bool set = false;
    std::vector<std::uint64_t> path;
    std::vector<int> labeling;
    std::vector<std::uint64_t> key;
  };

  void search(const OrderedPartition &p, std::vector<std::uint64_t> &path, std::vector<int> &prefix);
  std::vector<std::uint64_t> leaf_key(const std::vector<int> &labeling) const;
  bool is_automorphism(const std::vector<int> &gamma) const;
  void record_automorphism(const Leaf &a, const std::vector<int> &labeling);

  const ColouredGraph &g_;
  bool want_canonical_ = false;
  Leaf first_, best_;
  std::vector<std::vector<int>> autgens_;
  std::uint64_t nodes_ = 0;
};

// Automorphism group of the scheme, acting on its points.
PermGroup aut_group(const AssociationScheme &s);

struct CanonicalForm {
  RelationMatrix matrix;
  Permutation point_map;          // sigma_f: input point -> canonical point
  std::vector<int> colour_map;    // sigma_g over {0..d}, colour_map[0] == 0
};

// Canonical representative under simultaneous point and relation
// relabeling. Two passes: the colour-exchange encoding fixes a canonical
// relation order, then the plain encoding fixes a canonical point order.
CanonicalForm canonical_form(const AssociationScheme &s);

// All relation reorderings fixing 0 and preserving the intersection
// numbers (they automatically commute with the converse). Closed under
// composition.
std::vector<std::vector<int>> algebraic_colour_candidates(const AssociationScheme &s);

// Older canonicalization route: minimize the transported tensor over all
// colour bijections, then take the lexicographically smallest
// point-canonical matrix over the minimizing coset. Exponential in d; used
// as a cross-check at small class counts.
CanonicalForm canonical_form_via_algebraic(const AssociationScheme &s);

}  // namespace schurian

#endif
