#include "schurian/perm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace schurian {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("permutation degree must be >= 1");
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > degree() || seen[v - 1])
      throw std::invalid_argument("permutation images are not a bijection on {1..n}");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i + 1;
  return Permutation(std::move(img));
}

Permutation Permutation::operator*(const Permutation &o) const {
  if (degree() != o.degree()) throw std::invalid_argument("degree mismatch in product");
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[i] = o.images_[images_[i] - 1];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

std::size_t Permutation::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int v : images_) {
    h ^= static_cast<std::size_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

Permutation parse_cycles(const std::string &text, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  std::vector<int> img(degree);
  for (int i = 0; i < degree; ++i) img[i] = i + 1;

  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  skip_ws();
  if (i == text.size()) throw std::invalid_argument("empty cycle expression");
  bool any = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" = identity factor
    } else {
      for (;;) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw std::invalid_argument("expected point number in cycle");
        int pt = std::stoi(text.substr(start, i - start));
        if (pt < 1 || pt > degree)
          throw std::invalid_argument("point " + std::to_string(pt) + " out of range 1.." + std::to_string(degree));
        if (std::find(cyc.begin(), cyc.end(), pt) != cyc.end())
          throw std::invalid_argument("point " + std::to_string(pt) + " repeated within one cycle");
        cyc.push_back(pt);
        skip_ws();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        if (i < text.size() && text[i] == ')') { ++i; break; }
        throw std::invalid_argument("expected ',' or ')' in cycle");
      }
    }
    any = true;
    if (cyc.size() >= 2) {
      // apply this cycle after what was parsed so far
      std::vector<int> cmap(degree);
      for (int k = 0; k < degree; ++k) cmap[k] = k + 1;
      for (std::size_t k = 0; k < cyc.size(); ++k) cmap[cyc[k] - 1] = cyc[(k + 1) % cyc.size()];
      for (int k = 0; k < degree; ++k) img[k] = cmap[img[k] - 1];
    }
    skip_ws();
  }
  if (!any) throw std::invalid_argument("malformed cycle expression");
  return Permutation(std::move(img));
}

std::string format_cycles(const Permutation &p) {
  int n = p.degree();
  std::vector<bool> seen(n, false);
  std::string out;
  for (int s = 1; s <= n; ++s) {
    if (seen[s - 1] || p(s) == s) continue;
    out += '(';
    int x = s;
    bool first = true;
    while (!seen[x - 1]) {
      seen[x - 1] = true;
      if (!first) out += ',';
      out += std::to_string(x);
      first = false;
      x = p(x);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// --- stabilizer chain ----------------------------------------------------

struct PermGroup::Chain {
  // levels[i].gens holds the strong generators first moving base_i; the
  // generating set of the i-th stabilizer group is the union over j >= i.
  struct Level {
    int base = 0;
    std::vector<Permutation> gens;
    std::vector<int> orbit;               // BFS order from base
    std::vector<int> slot;                // point -> index into orbit, or -1
    std::vector<Permutation> transversal; // transversal[i] maps base to orbit[i]
  };
  int degree = 0;
  std::vector<Level> levels;

  std::vector<Permutation> stabilizer_gens(std::size_t from) const {
    std::vector<Permutation> out;
    for (std::size_t j = from; j < levels.size(); ++j)
      out.insert(out.end(), levels[j].gens.begin(), levels[j].gens.end());
    return out;
  }

  void rebuild_orbit(std::size_t i) {
    Level &lv = levels[i];
    std::vector<Permutation> gens = stabilizer_gens(i);
    lv.orbit.clear();
    lv.transversal.clear();
    lv.slot.assign(degree, -1);
    lv.orbit.push_back(lv.base);
    lv.slot[lv.base - 1] = 0;
    lv.transversal.push_back(Permutation::identity(degree));
    for (std::size_t qi = 0; qi < lv.orbit.size(); ++qi) {
      int pt = lv.orbit[qi];
      for (const Permutation &g : gens) {
        int im = g(pt);
        if (lv.slot[im - 1] < 0) {
          lv.slot[im - 1] = static_cast<int>(lv.orbit.size());
          lv.orbit.push_back(im);
          lv.transversal.push_back(lv.transversal[qi] * g);
        }
      }
    }
  }

  // Sift p through levels starting at `from`; returns the residue and the
  // level at which sifting stopped (levels.size() on full success).
  std::pair<Permutation, std::size_t> sift(Permutation p, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels.size(); ++i) {
      const Level &lv = levels[i];
      int im = p(lv.base);
      if (im == lv.base) continue;
      int s = lv.slot[im - 1];
      if (s < 0) return {std::move(p), i};
      p = p * lv.transversal[s].inverse();
    }
    return {std::move(p), levels.size()};
  }

  static int smallest_moved(const Permutation &p) {
    for (int x = 1; x <= p.degree(); ++x)
      if (p(x) != x) return x;
    return 0;
  }

  // Adds a strong generator known to fix the bases of all levels < lvl and
  // refreshes the orbits it participates in.
  void add_generator(Permutation res, std::size_t lvl) {
    if (lvl == levels.size()) {
      Level lv;
      lv.base = smallest_moved(res);
      levels.push_back(std::move(lv));
    }
    levels[lvl].gens.push_back(std::move(res));
    for (std::size_t j = 0; j <= lvl && j < levels.size(); ++j) rebuild_orbit(j);
  }

  void insert(Permutation p) {
    auto [res, lvl] = sift(std::move(p));
    if (res.is_identity()) return;
    add_generator(std::move(res), lvl);
  }

  void build(const std::vector<Permutation> &gens, int deg) {
    degree = deg;
    for (const Permutation &g : gens) insert(g);
    // Close under Schreier generators until stable.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < levels.size() && !changed; ++i) {
        const std::vector<Permutation> level_gens = stabilizer_gens(i);
        Level &lv = levels[i];
        for (std::size_t oi = 0; oi < lv.orbit.size() && !changed; ++oi) {
          for (const Permutation &g : level_gens) {
            int im = g(lv.orbit[oi]);
            const Permutation &u_to = lv.transversal[lv.slot[im - 1]];
            Permutation schreier = lv.transversal[oi] * g * u_to.inverse();
            auto [res, lvl] = sift(std::move(schreier), i + 1);
            if (!res.is_identity()) {
              add_generator(std::move(res), lvl);
              changed = true;
              break;
            }
          }
        }
      }
    }
  }
};

PermGroup::PermGroup(int degree, std::vector<Permutation> generators) : degree_(degree) {
  if (degree < 1) throw std::invalid_argument("group degree must be >= 1");
  for (auto &g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (g.is_identity()) continue;
    if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
  }
}

std::shared_ptr<const PermGroup::Chain> PermGroup::chain_snapshot() const {
  std::lock_guard<std::mutex> lock(chain_mutex_);
  return chain_;
}

PermGroup::PermGroup(const PermGroup &o)
    : degree_(o.degree_), gens_(o.gens_), chain_(o.chain_snapshot()) {}

PermGroup::PermGroup(PermGroup &&o) noexcept
    : degree_(o.degree_), gens_(std::move(o.gens_)), chain_(o.chain_snapshot()) {}

PermGroup &PermGroup::operator=(const PermGroup &o) {
  if (this != &o) {
    degree_ = o.degree_;
    gens_ = o.gens_;
    auto snap = o.chain_snapshot();
    std::lock_guard<std::mutex> lock(chain_mutex_);
    chain_ = std::move(snap);
  }
  return *this;
}

PermGroup &PermGroup::operator=(PermGroup &&o) noexcept {
  if (this != &o) {
    degree_ = o.degree_;
    gens_ = std::move(o.gens_);
    auto snap = o.chain_snapshot();
    std::lock_guard<std::mutex> lock(chain_mutex_);
    chain_ = std::move(snap);
  }
  return *this;
}

const PermGroup::Chain &PermGroup::chain() const {
  std::lock_guard<std::mutex> lock(chain_mutex_);
  if (!chain_) {
    auto c = std::make_shared<Chain>();
    c->build(gens_, degree_);
    chain_ = std::move(c);
  }
  return *chain_;
}

BigUint PermGroup::order() const {
  BigUint o(1);
  for (const auto &lv : chain().levels) o *= static_cast<std::uint64_t>(lv.orbit.size());
  return o;
}

bool PermGroup::contains(const Permutation &p) const {
  if (p.degree() != degree_) throw std::invalid_argument("degree mismatch in membership test");
  auto [res, lvl] = chain().sift(p);
  (void)lvl;
  return res.is_identity();
}

bool PermGroup::is_transitive() const {
  std::vector<bool> seen(degree_, false);
  std::vector<int> queue{1};
  seen[0] = true;
  int count = 1;
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (const Permutation &g : gens_) {
      int y = g(x);
      if (!seen[y - 1]) {
        seen[y - 1] = true;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count == degree_;
}

PairPartition PermGroup::orbitals() const {
  if (!is_transitive()) throw std::invalid_argument("orbitals require a transitive group");
  int n = degree_;
  PairPartition part;
  part.n = n;
  part.label.assign(static_cast<std::size_t>(n) * n, -1);
  int next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      if (part.label[(x - 1) * n + (y - 1)] >= 0) continue;
      int cls = next++;
      part.label[(x - 1) * n + (y - 1)] = cls;
      stack.push_back({x, y});
      while (!stack.empty()) {
        auto [u, v] = stack.back();
        stack.pop_back();
        for (const Permutation &g : gens_) {
          int uu = g(u), vv = g(v);
          int &slot = part.label[(uu - 1) * n + (vv - 1)];
          if (slot < 0) {
            slot = cls;
            stack.push_back({uu, vv});
          }
        }
      }
    }
  }
  part.classes = next;
  return part;
}

PermGroup PermGroup::conjugate(const Permutation &s) const {
  if (s.degree() != degree_) throw std::invalid_argument("degree mismatch in conjugation");
  Permutation si = s.inverse();
  std::vector<Permutation> gens;
  gens.reserve(gens_.size());
  for (const Permutation &g : gens_) gens.push_back(si * g * s);
  return PermGroup(degree_, std::move(gens));
}

std::vector<Permutation> reduce_generating_set(int degree, const std::vector<Permutation> &gens) {
  BigUint target = PermGroup(degree, gens).order();
  std::vector<Permutation> kept;
  for (const Permutation &g : gens) {
    if (g.is_identity()) continue;
    if (!kept.empty() && PermGroup(degree, kept).contains(g)) continue;
    kept.push_back(g);
    if (PermGroup(degree, kept).order() == target) break;
  }
  return kept;
}

bool same_group(const PermGroup &a, const PermGroup &b) {
  if (a.degree() != b.degree()) return false;
  if (a.order() != b.order()) return false;
  for (const Permutation &g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

// --- group files ----------------------------------------------------------

std::vector<PermGroup> read_groups(std::istream &in) {
  std::vector<PermGroup> out;
  std::string line;
  int degree = -1;
  std::vector<Permutation> gens;
  auto flush = [&] {
    if (degree > 0) out.emplace_back(degree, std::move(gens));
    gens.clear();
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    std::string t = line.substr(a, b - a + 1);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("degree", 0) == 0) {
      flush();
      std::istringstream ss(t.substr(6));
      if (!(ss >> degree) || degree < 1)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad degree header");
      continue;
    }
    if (degree < 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": permutation before degree header");
    try {
      gens.push_back(parse_cycles(t, degree));
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  flush();
  if (out.empty()) throw std::invalid_argument("no groups in input");
  return out;
}

std::vector<PermGroup> read_groups_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group file: " + path);
  return read_groups(in);
}

PermGroup read_group_file(const std::string &path) {
  auto all = read_groups_file(path);
  if (all.size() != 1)
    throw std::invalid_argument(path + ": expected exactly one group, found " + std::to_string(all.size()));
  return all.front();
}

void write_group(std::ostream &out, const PermGroup &g) {
  out << "degree " << g.degree() << "\n";
  if (g.generators().empty()) out << "()\n";
  for (const Permutation &p : g.generators()) out << format_cycles(p) << "\n";
}

}  // namespace schurian
