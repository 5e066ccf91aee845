#include "schurian/canon.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace schurian {

void ColouredGraph::sort_adjacency() {
  for (auto &nb : adj) std::sort(nb.begin(), nb.end());
}

namespace {

int bit_layers(int d) {
  int layers = 0;
  while ((1 << layers) < d + 1) ++layers;
  return layers;
}

}  // namespace

LayeredColouredGraph encode_matrix(const RelationMatrix &m, bool allow_colour_exchange) {
  LayeredColouredGraph enc;
  enc.n = m.n;
  enc.d = m.d;
  enc.colour_exchange = allow_colour_exchange;
  enc.layers = allow_colour_exchange ? m.d : bit_layers(m.d);
  const int n = m.n, L = enc.layers;

  int total = n * (1 + 2 * L) + (allow_colour_exchange ? m.d : 0);
  ColouredGraph g(total);

  // vertex colours: points 0; layers each their own class unless exchange,
  // where all sources share one class and all targets another and the
  // colour vertices a final one
  for (int v = 0; v < n; ++v) g.colour[enc.point_vertex(v)] = 0;
  for (int l = 0; l < L; ++l)
    for (int v = 0; v < n; ++v) {
      g.colour[enc.source_vertex(v, l)] = allow_colour_exchange ? 1 : 1 + l;
      g.colour[enc.target_vertex(v, l)] = allow_colour_exchange ? 2 : 1 + L + l;
    }
  if (allow_colour_exchange)
    for (int c = 1; c <= m.d; ++c) g.colour[enc.colour_vertex(c)] = 3;

  // vertical threads tying each point's copies together
  for (int v = 0; v < n; ++v) {
    if (allow_colour_exchange) {
      for (int l = 0; l < L; ++l) {
        g.add_edge(enc.point_vertex(v), enc.source_vertex(v, l));
        g.add_edge(enc.point_vertex(v), enc.target_vertex(v, l));
      }
    } else if (L > 0) {
      g.add_edge(enc.point_vertex(v), enc.source_vertex(v, 0));
      g.add_edge(enc.point_vertex(v), enc.target_vertex(v, 0));
      for (int l = 0; l + 1 < L; ++l) {
        g.add_edge(enc.source_vertex(v, l), enc.source_vertex(v, l + 1));
        g.add_edge(enc.target_vertex(v, l), enc.target_vertex(v, l + 1));
      }
    }
  }

  // arcs
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      int c = m.at(x, y);
      if (c == 0) continue;
      if (allow_colour_exchange) {
        g.add_edge(enc.source_vertex(x - 1, c - 1), enc.target_vertex(y - 1, c - 1));
      } else {
        for (int l = 0; l < L; ++l)
          if (c & (1 << l)) g.add_edge(enc.source_vertex(x - 1, l), enc.target_vertex(y - 1, l));
      }
    }

  if (allow_colour_exchange)
    for (int c = 1; c <= m.d; ++c)
      for (int v = 0; v < n; ++v) {
        g.add_edge(enc.colour_vertex(c), enc.source_vertex(v, c - 1));
        g.add_edge(enc.colour_vertex(c), enc.target_vertex(v, c - 1));
      }

  g.sort_adjacency();
  enc.graph = std::move(g);
  return enc;
}

LayeredColouredGraph encode_scheme(const AssociationScheme &s, bool allow_colour_exchange) {
  return encode_matrix(s.relation_matrix(), allow_colour_exchange);
}

RelationMatrix LayeredColouredGraph::decode() const {
  RelationMatrix m;
  m.n = n;
  m.d = d;
  m.entries.assign(static_cast<std::size_t>(n) * n, 0);
  auto has_edge = [&](int u, int v) {
    const auto &nb = graph.adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      int c = 0;
      if (colour_exchange) {
        for (int l = 0; l < layers; ++l)
          if (has_edge(source_vertex(x, l), target_vertex(y, l))) {
            c = l + 1;
            break;
          }
      } else {
        for (int l = 0; l < layers; ++l)
          if (has_edge(source_vertex(x, l), target_vertex(y, l))) c |= 1 << l;
      }
      m.entries[static_cast<std::size_t>(x) * n + y] = c;
    }
  return m;
}

// --- refinement -------------------------------------------------------------

OrderedPartition OrderedPartition::from_colours(const ColouredGraph &g) {
  int maxc = 0;
  for (int c : g.colour) maxc = std::max(maxc, c);
  OrderedPartition p;
  p.cells.resize(maxc + 1);
  for (int v = 0; v < g.vertex_count; ++v) p.cells[g.colour[v]].push_back(v);
  p.cells.erase(std::remove_if(p.cells.begin(), p.cells.end(),
                               [](const std::vector<int> &c) { return c.empty(); }),
                p.cells.end());
  return p;
}

bool OrderedPartition::is_discrete() const {
  for (const auto &c : cells)
    if (c.size() > 1) return false;
  return true;
}

OrderedPartition refine(const ColouredGraph &g, OrderedPartition p) {
  std::deque<std::vector<int>> queue(p.cells.begin(), p.cells.end());
  std::vector<int> cnt(g.vertex_count, 0);
  std::vector<int> touched;

  while (!queue.empty()) {
    std::vector<int> w = std::move(queue.front());
    queue.pop_front();
    touched.clear();
    for (int x : w)
      for (int u : g.adj[x]) {
        if (cnt[u]++ == 0) touched.push_back(u);
      }

    std::vector<std::vector<int>> next_cells;
    next_cells.reserve(p.cells.size());
    for (auto &cell : p.cells) {
      if (cell.size() == 1) {
        next_cells.push_back(std::move(cell));
        continue;
      }
      std::map<int, std::vector<int>> by_count;
      for (int v : cell) by_count[cnt[v]].push_back(v);
      if (by_count.size() == 1) {
        next_cells.push_back(std::move(cell));
        continue;
      }
      for (auto &[value, members] : by_count) {
        queue.push_back(members);
        next_cells.push_back(std::move(members));
      }
    }
    p.cells = std::move(next_cells);
    for (int u : touched) cnt[u] = 0;
  }
  return p;
}

// --- search engine ----------------------------------------------------------

namespace {

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t partition_invariant(const ColouredGraph &g, const OrderedPartition &p) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto &cell : p.cells) {
    h = hash_combine(h, cell.size());
    h = hash_combine(h, static_cast<std::uint64_t>(g.colour[cell[0]]));
  }
  return h;
}

int first_nonsingleton(const OrderedPartition &p) {
  for (std::size_t i = 0; i < p.cells.size(); ++i)
    if (p.cells[i].size() > 1) return static_cast<int>(i);
  return -1;
}

}  // namespace

LabelingEngine::LabelingEngine(const ColouredGraph &g) : g_(g) {}

std::vector<std::uint64_t> LabelingEngine::leaf_key(const std::vector<int> &labeling) const {
  // relabelled edge list, sorted; positions carry fixed colours so the
  // colouring needs no separate encoding
  std::vector<std::uint64_t> edges;
  for (int u = 0; u < g_.vertex_count; ++u)
    for (int v : g_.adj[u]) {
      if (v < u) continue;
      int a = labeling[u], b = labeling[v];
      if (a > b) std::swap(a, b);
      edges.push_back((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b));
    }
  std::sort(edges.begin(), edges.end());
  return edges;
}

bool LabelingEngine::is_automorphism(const std::vector<int> &gamma) const {
  for (int v = 0; v < g_.vertex_count; ++v)
    if (g_.colour[gamma[v]] != g_.colour[v]) return false;
  std::vector<int> mapped;
  for (int u = 0; u < g_.vertex_count; ++u) {
    mapped.clear();
    for (int v : g_.adj[u]) mapped.push_back(gamma[v]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != g_.adj[gamma[u]]) return false;
  }
  return true;
}

void LabelingEngine::record_automorphism(const Leaf &a, const std::vector<int> &labeling) {
  // gamma maps the stored leaf's vertex at each position to the new leaf's
  std::vector<int> by_pos(g_.vertex_count), gamma(g_.vertex_count);
  for (int v = 0; v < g_.vertex_count; ++v) by_pos[labeling[v]] = v;
  for (int v = 0; v < g_.vertex_count; ++v) gamma[v] = by_pos[a.labeling[v]];
  bool identity = true;
  for (int v = 0; v < g_.vertex_count && identity; ++v) identity = gamma[v] == v;
  if (identity) return;
  if (!is_automorphism(gamma))
    throw std::logic_error("labeling engine produced a non-automorphism");
  for (const auto &known : autgens_)
    if (known == gamma) return;
  autgens_.push_back(std::move(gamma));
}

namespace {

// Lexicographic comparison of a partial path against a reference path;
// "deeper with an equal prefix" counts as greater.
int prefix_cmp(const std::vector<std::uint64_t> &path, const std::vector<std::uint64_t> &ref) {
  std::size_t m = std::min(path.size(), ref.size());
  for (std::size_t t = 0; t < m; ++t) {
    if (path[t] != ref[t]) return path[t] < ref[t] ? -1 : 1;
  }
  return path.size() > ref.size() ? 1 : 0;
}

}  // namespace

void LabelingEngine::search(const OrderedPartition &p, std::vector<std::uint64_t> &path,
                            std::vector<int> &prefix) {
  ++nodes_;
  int target = first_nonsingleton(p);
  if (target < 0) {
    // leaf
    std::vector<int> labeling(g_.vertex_count);
    for (std::size_t i = 0; i < p.cells.size(); ++i) labeling[p.cells[i][0]] = static_cast<int>(i);
    auto key = leaf_key(labeling);
    if (!first_.set) {
      first_.set = true;
      first_.path = path;
      first_.labeling = labeling;
      first_.key = key;
      if (want_canonical_) best_ = first_;
      return;
    }
    if (path == first_.path && key == first_.key) {
      record_automorphism(first_, labeling);
      // fall through: the leaf may still interact with the current best
    }
    if (want_canonical_ && best_.set) {
      int cmp = prefix_cmp(path, best_.path);
      bool full_equal = cmp == 0 && path.size() == best_.path.size();
      if (full_equal && key == best_.key) {
        record_automorphism(best_, labeling);
      } else if (cmp > 0 || (full_equal && key < best_.key)) {
        best_.path = path;
        best_.labeling = std::move(labeling);
        best_.key = std::move(key);
      }
    }
    return;
  }

  const std::vector<int> cell = p.cells[target];
  std::vector<int> processed;
  for (int v : cell) {
    // orbit pruning under the automorphisms found so far that fix the prefix
    if (!processed.empty() && !autgens_.empty()) {
      std::vector<const std::vector<int> *> fixing;
      for (const auto &ggen : autgens_) {
        bool fixes = true;
        for (int u : prefix)
          if (ggen[u] != u) {
            fixes = false;
            break;
          }
        if (fixes) fixing.push_back(&ggen);
      }
      if (!fixing.empty()) {
        std::vector<int> orbit = processed;
        std::vector<char> in_orbit(g_.vertex_count, 0);
        for (int u : orbit) in_orbit[u] = 1;
        for (std::size_t qi = 0; qi < orbit.size(); ++qi)
          for (const auto *gg : fixing) {
            int im = (*gg)[orbit[qi]];
            if (!in_orbit[im]) {
              in_orbit[im] = 1;
              orbit.push_back(im);
            }
          }
        if (in_orbit[v]) {
          processed.push_back(v);
          continue;
        }
      }
    }

    OrderedPartition child;
    child.cells.reserve(p.cells.size() + 1);
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
      if (static_cast<int>(i) == target) {
        child.cells.push_back({v});
        std::vector<int> rest;
        rest.reserve(cell.size() - 1);
        for (int u : cell)
          if (u != v) rest.push_back(u);
        child.cells.push_back(std::move(rest));
      } else {
        child.cells.push_back(p.cells[i]);
      }
    }
    child = refine(g_, std::move(child));
    path.push_back(partition_invariant(g_, child));

    bool explore;
    if (!first_.set) {
      explore = true;  // first-path descent
    } else {
      bool first_compatible = prefix_cmp(path, first_.path) == 0;
      if (want_canonical_)
        explore = first_compatible || prefix_cmp(path, best_.path) >= 0;
      else
        explore = first_compatible;
    }
    if (explore) {
      prefix.push_back(v);
      search(child, path, prefix);
      prefix.pop_back();
    }
    path.pop_back();
    processed.push_back(v);
  }
}

LabelingEngine::Result LabelingEngine::run(bool want_canonical) {
  want_canonical_ = want_canonical;
  OrderedPartition root = refine(g_, OrderedPartition::from_colours(g_));
  std::vector<std::uint64_t> path{partition_invariant(g_, root)};
  std::vector<int> prefix;
  if (first_.set) throw std::logic_error("labeling engine instances are single-use");
  search(root, path, prefix);

  Result res;
  res.automorphisms = autgens_;
  res.nodes_visited = nodes_;
  if (want_canonical) res.canonical_labeling = best_.labeling;
  return res;
}

// --- scheme-level operations -------------------------------------------------

PermGroup aut_group(const AssociationScheme &s) {
  const int n = s.order();
  if (n == 1) return PermGroup(1, {});
  LayeredColouredGraph enc = encode_scheme(s, false);
  LabelingEngine engine(enc.graph);
  auto res = engine.run(false);
  std::vector<Permutation> gens;
  for (const auto &gamma : res.automorphisms) {
    std::vector<int> img(n);
    for (int v = 0; v < n; ++v) img[v] = gamma[enc.point_vertex(v)] + 1;
    Permutation p(std::move(img));
    if (!p.is_identity()) gens.push_back(std::move(p));
  }
  return PermGroup(n, std::move(gens));
}

namespace {

// point order from the canonical labeling of an encoding: the point whose
// vertex lands on the smallest canonical position becomes 1, and so on
Permutation extract_point_map(const LayeredColouredGraph &enc, const std::vector<int> &labeling) {
  std::vector<std::pair<int, int>> pos;
  pos.reserve(enc.n);
  for (int v = 0; v < enc.n; ++v) pos.push_back({labeling[enc.point_vertex(v)], v});
  std::sort(pos.begin(), pos.end());
  std::vector<int> img(enc.n);
  for (int rank = 0; rank < enc.n; ++rank) img[pos[rank].second] = rank + 1;
  return Permutation(std::move(img));
}

}  // namespace

CanonicalForm canonical_form(const AssociationScheme &s) {
  const RelationMatrix &m = s.relation_matrix();
  const int n = m.n, d = m.d;
  CanonicalForm out;
  if (n == 1 || d == 0) {
    out.matrix = m;
    out.point_map = Permutation::identity(n);
    out.colour_map.assign(d + 1, 0);
    for (int c = 0; c <= d; ++c) out.colour_map[c] = c;
    return out;
  }

  // pass 1: canonical colour order from the exchange encoding
  LayeredColouredGraph enc1 = encode_scheme(s, true);
  LabelingEngine eng1(enc1.graph);
  auto res1 = eng1.run(true);
  std::vector<std::pair<int, int>> cpos;
  for (int c = 1; c <= d; ++c) cpos.push_back({res1.canonical_labeling[enc1.colour_vertex(c)], c});
  std::sort(cpos.begin(), cpos.end());
  std::vector<int> tau(d + 1, 0);
  for (int rank = 0; rank < d; ++rank) tau[cpos[rank].second] = rank + 1;

  RelationMatrix recoloured = relabel(m, {}, tau);

  // pass 2: canonical point order with colours fixed
  LayeredColouredGraph enc2 = encode_matrix(recoloured, false);
  LabelingEngine eng2(enc2.graph);
  auto res2 = eng2.run(true);
  Permutation sigma = extract_point_map(enc2, res2.canonical_labeling);

  out.matrix = relabel(recoloured, sigma.images(), {});
  out.point_map = std::move(sigma);
  out.colour_map = std::move(tau);
  if (out.matrix == m) {
    // fixed point: report identity maps
    out.point_map = Permutation::identity(n);
    for (int c = 0; c <= d; ++c) out.colour_map[c] = c;
  }
  return out;
}

namespace {

void colour_candidates_rec(const AssociationScheme &s, std::vector<int> &tau, std::vector<bool> &used,
                           int next, std::vector<std::vector<int>> &out) {
  const int d = s.classes();
  if (next > d) {
    out.push_back(tau);
    return;
  }
  for (int c = 1; c <= d; ++c) {
    if (used[c] || s.valency(next) != s.valency(c)) continue;
    // converse compatibility with what is already assigned
    int cn = s.converse(next);
    if (cn < next && tau[cn] != s.converse(c)) continue;
    tau[next] = c;
    used[c] = true;
    bool ok = true;
    for (int i = 0; i <= next && ok; ++i)
      for (int j = 0; j <= next && ok; ++j)
        for (int k = 0; k <= next && ok; ++k)
          if (s.p(tau[i], tau[j], tau[k]) != s.p(i, j, k)) ok = false;
    if (ok) colour_candidates_rec(s, tau, used, next + 1, out);
    used[c] = false;
    tau[next] = -1;
  }
}

}  // namespace

std::vector<std::vector<int>> algebraic_colour_candidates(const AssociationScheme &s) {
  const int d = s.classes();
  std::vector<int> tau(d + 1, -1);
  tau[0] = 0;
  std::vector<bool> used(d + 1, false);
  used[0] = true;
  std::vector<std::vector<int>> out;
  colour_candidates_rec(s, tau, used, 1, out);
  return out;
}

namespace {

// transported tensor q with q_{tau(i),tau(j)}^{tau(k)} = p_{ij}^k, flattened
// in (i,j,k) order of the *new* labels
std::vector<int> transported_tensor(const AssociationScheme &s, const std::vector<int> &tau) {
  const int m = s.classes() + 1;
  std::vector<int> inv(m);
  for (int i = 0; i < m; ++i) inv[tau[i]] = i;
  std::vector<int> q(static_cast<std::size_t>(m) * m * m);
  std::size_t idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) q[idx++] = s.p(inv[i], inv[j], inv[k]);
  return q;
}

void enumerate_bijections(int d, std::vector<int> &tau, std::vector<bool> &used, int next,
                          const std::function<void(const std::vector<int> &)> &emit) {
  if (next > d) {
    emit(tau);
    return;
  }
  for (int c = 1; c <= d; ++c) {
    if (used[c]) continue;
    tau[next] = c;
    used[c] = true;
    enumerate_bijections(d, tau, used, next + 1, emit);
    used[c] = false;
  }
}

}  // namespace

CanonicalForm canonical_form_via_algebraic(const AssociationScheme &s) {
  const int d = s.classes();
  const int n = s.order();
  if (d > 8)
    throw std::invalid_argument("algebraic canonicalization route supports at most 8 classes");
  if (n == 1 || d == 0) return canonical_form(s);

  // collect all colour bijections minimizing the transported tensor
  std::vector<std::vector<int>> minimizers;
  std::vector<int> best_tensor;
  std::vector<int> tau(d + 1, 0);
  std::vector<bool> used(d + 1, false);
  used[0] = true;
  enumerate_bijections(d, tau, used, 1, [&](const std::vector<int> &t) {
    auto q = transported_tensor(s, t);
    if (best_tensor.empty() || q < best_tensor) {
      best_tensor = std::move(q);
      minimizers.assign(1, t);
    } else if (q == best_tensor) {
      minimizers.push_back(t);
    }
  });

  CanonicalForm best;
  bool have = false;
  for (const auto &t : minimizers) {
    RelationMatrix recoloured = relabel(s.relation_matrix(), {}, t);
    LayeredColouredGraph enc = encode_matrix(recoloured, false);
    LabelingEngine engine(enc.graph);
    auto res = engine.run(true);
    Permutation sigma = extract_point_map(enc, res.canonical_labeling);
    RelationMatrix cand = relabel(recoloured, sigma.images(), {});
    if (!have || cand < best.matrix) {
      have = true;
      best.matrix = std::move(cand);
      best.point_map = std::move(sigma);
      best.colour_map = t;
    }
  }
  if (best.matrix == s.relation_matrix()) {
    best.point_map = Permutation::identity(n);
    for (int c = 0; c <= d; ++c) best.colour_map[c] = c;
  }
  return best;
}

}  // namespace schurian
