#include "schurian/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace schurian::oracle {

namespace {

std::uint64_t pack(const std::vector<int> &images) {
  std::uint64_t k = 0;
  for (int v : images) k = (k << 8) | static_cast<std::uint64_t>(v);
  return k;
}

}  // namespace

PermGroup brute_aut(const AssociationScheme &s) {
  const int n = s.order();
  if (n > 8) throw std::invalid_argument("brute_aut supports n <= 8");
  const RelationMatrix &m = s.relation_matrix();
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> found;
  do {
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x)
      for (int y = 1; y <= n; ++y)
        if (m.at(img[x - 1], img[y - 1]) != m.at(x, y)) {
          ok = false;
          break;
        }
    if (ok) found.push_back(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return PermGroup(n, reduce_generating_set(n, found));
}

std::optional<IsoCertificate> brute_iso(const AssociationScheme &a, const AssociationScheme &b) {
  const int n = a.order();
  if (n > 6) throw std::invalid_argument("brute_iso supports n <= 6");
  if (n != b.order() || a.classes() != b.classes()) return std::nullopt;
  const int d = a.classes();
  const RelationMatrix &ma = a.relation_matrix();
  const RelationMatrix &mb = b.relation_matrix();
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  do {
    std::vector<int> tau(d + 1, -1), tau_inv(d + 1, -1);
    tau[0] = 0;
    tau_inv[0] = 0;
    bool ok = true;
    for (int x = 1; x <= n && ok; ++x)
      for (int y = 1; y <= n; ++y) {
        int c = ma.at(x, y);
        int c2 = mb.at(img[x - 1], img[y - 1]);
        if (tau[c] == -1) {
          if (tau_inv[c2] != -1) {
            ok = false;
            break;
          }
          tau[c] = c2;
          tau_inv[c2] = c;
        } else if (tau[c] != c2) {
          ok = false;
          break;
        }
      }
    if (ok) {
      IsoCertificate cert;
      cert.point_map = Permutation(img);
      cert.class_map = tau;
      return cert;
    }
  } while (std::next_permutation(img.begin(), img.end()));
  return std::nullopt;
}

std::vector<Permutation> element_closure(int degree, const std::vector<Permutation> &gens,
                                         std::size_t max_elements) {
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<Permutation> elems{Permutation::identity(degree)};
  seen[pack(elems[0].images())] = true;
  for (std::size_t qi = 0; qi < elems.size(); ++qi) {
    Permutation cur = elems[qi];
    for (const Permutation &g : gens) {
      Permutation next = cur * g;
      auto key = pack(next.images());
      if (!seen.count(key)) {
        seen[key] = true;
        if (elems.size() >= max_elements)
          throw std::runtime_error("element closure budget exceeded");
        elems.push_back(std::move(next));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// --- transitive subgroup enumeration ----------------------------------------

namespace {

struct Universe {
  int n = 0;
  std::vector<Permutation> elems;  // all of S_n, lexicographic
  std::unordered_map<std::uint64_t, int> index;
  std::vector<int> inverse_of;
  std::vector<int> type_of;  // cycle-type id per element

  explicit Universe(int degree) : n(degree) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    do {
      index.emplace(pack(img), static_cast<int>(elems.size()));
      elems.push_back(Permutation(img));
    } while (std::next_permutation(img.begin(), img.end()));
    inverse_of.resize(elems.size());
    type_of.resize(elems.size());
    std::map<std::vector<int>, int> type_ids;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      inverse_of[i] = index.at(pack(elems[i].inverse().images()));
      std::vector<int> type = cycle_type(elems[i]);
      auto [it, fresh] = type_ids.emplace(type, static_cast<int>(type_ids.size()));
      (void)fresh;
      type_of[i] = it->second;
    }
  }

  static std::vector<int> cycle_type(const Permutation &p) {
    int n = p.degree();
    std::vector<bool> seen(n, false);
    std::vector<int> type;
    for (int s = 1; s <= n; ++s) {
      if (seen[s - 1]) continue;
      int len = 0, x = s;
      while (!seen[x - 1]) {
        seen[x - 1] = true;
        x = p(x);
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
  }

  int idx(const Permutation &p) const { return index.at(pack(p.images())); }
  int conj_idx(int s_inv, int g, int s) const {
    const Permutation &a = elems[s_inv];
    const Permutation &b = elems[g];
    const Permutation &c = elems[s];
    std::vector<int> img(n);
    for (int x = 1; x <= n; ++x) img[x - 1] = c(b(a(x)));
    return index.at(pack(img));
  }
};

struct SubgroupClass {
  std::vector<int> elements;  // sorted universe indices
  std::vector<bool> member;
  std::vector<int> gen_idx;
  std::vector<int> invariant;  // order, then cycle-type counts
};

std::uint64_t fingerprint(const std::vector<int> &sorted_idx) {
  std::uint64_t h = 1469598103934665603ull;
  for (int v : sorted_idx) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h;
}

// Perfect subgroups of S_n up to conjugacy, n <= 8: alternating groups in
// their natural and two-point actions, PSL(3,2) on points and hyperplanes,
// PSL(2,7) on the projective line, and AGL(3,2) on F_2^3. Together with
// cyclic bottoms these seed every subgroup class via normalizing
// extensions (solvable quotients have subnormal series with prime cyclic
// steps).
std::vector<std::vector<Permutation>> perfect_seeds(int n) {
  auto pad = [n](std::vector<std::vector<int>> cycles_list) {
    std::vector<Permutation> gens;
    for (auto &imgs : cycles_list) {
      std::vector<int> img(n);
      std::iota(img.begin(), img.end(), 1);
      for (std::size_t i = 0; i < imgs.size(); ++i) img[i] = imgs[i];
      gens.push_back(Permutation(std::move(img)));
    }
    return gens;
  };

  std::vector<std::vector<Permutation>> seeds;
  if (n >= 5) seeds.push_back(pad({{2, 3, 1}, {1, 2, 4, 5, 3}}));  // A5 natural

  if (n >= 6) {
    // A5 ~ PSL(2,5) on the projective line over F_5: 1-based point 1 is
    // infinity, point v+2 is the field value v
    std::vector<int> add_one(6), mul_four(6), neg_inv(6);
    add_one[0] = mul_four[0] = 1;
    neg_inv[0] = 2;      // inf -> 0
    neg_inv[1] = 1;      // 0 -> inf
    for (int v = 0; v < 5; ++v) {
      add_one[v + 1] = (v + 1) % 5 + 2;
      mul_four[v + 1] = (4 * v) % 5 + 2;
      if (v > 0) neg_inv[v + 1] = (5 - (v * v * v) % 5) % 5 + 2;  // -1/v, v^-1 = v^3
    }
    seeds.push_back(pad({add_one, mul_four, neg_inv}));
    seeds.push_back(pad({{2, 3, 1}, {1, 3, 4, 5, 6, 2}}));  // A6 = <(1,2,3),(2,3,4,5,6)>
  }

  if (n >= 7) {
    seeds.push_back(pad({{2, 3, 1}, {2, 3, 4, 5, 6, 7, 1}}));  // A7 = <(1,2,3),(1,2,...,7)>
    // PSL(3,2) = GL(3,2) acting on the nonzero vectors of F_2^3 (vector v
    // is the point with binary value v), plus the dual (inverse-transpose)
    // action on hyperplanes
    using Mat3 = std::array<std::array<int, 3>, 3>;
    auto mat_vec = [](const Mat3 &a, int v) {
      int bits[3] = {(v >> 2) & 1, (v >> 1) & 1, v & 1};
      int out = 0;
      for (int r = 0; r < 3; ++r) {
        int s = 0;
        for (int c = 0; c < 3; ++c) s ^= a[r][c] & bits[c];
        out = (out << 1) | s;
      }
      return out;
    };
    auto gl_perm = [&](const Mat3 &a) {
      std::vector<int> img(7);
      for (int v = 1; v <= 7; ++v) img[v - 1] = mat_vec(a, v);
      return img;
    };
    Mat3 cyc{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    Mat3 trans{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
    // inverse-transpose images (both matrices are self-inverse-transpose up
    // to the explicit forms below)
    Mat3 cyc_it{{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}};     // (cyc^-1)^T
    Mat3 trans_it{{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}};   // (trans^-1)^T
    seeds.push_back(pad({gl_perm(cyc), gl_perm(trans)}));
    seeds.push_back(pad({gl_perm(cyc_it), gl_perm(trans_it)}));
  }

  if (n >= 8) {
    seeds.push_back(pad({{2, 3, 1}, {1, 3, 4, 5, 6, 7, 8, 2}}));  // A8 = <(1,2,3),(2,...,8)>
    // PSL(2,7) on the projective line over F_7: index 1 = inf, v+2 = value v
    auto proj = [&](auto f) {
      std::vector<int> img(8);
      for (int i = 0; i < 8; ++i) img[i] = f(i) + 1;
      return img;
    };
    auto p_add = proj([](int i) { return i == 0 ? 0 : (i - 1 + 1) % 7 + 1; });
    auto p_mul2 = proj([](int i) { return i == 0 ? 0 : (2 * (i - 1)) % 7 + 1; });
    auto p_neginv = proj([](int i) {
      if (i == 0) return 1;
      int v = i - 1;
      if (v == 0) return 0;
      int inv = (v * v * v * v * v) % 7;  // v^-1 = v^5 mod 7
      return (7 - inv) % 7 + 1;
    });
    seeds.push_back(pad({p_add, p_mul2, p_neginv}));
    // AGL(3,2) on all of F_2^3: point = vector value + 1
    using Mat3 = std::array<std::array<int, 3>, 3>;
    auto mat_vec = [](const Mat3 &a, int v) {
      int bits[3] = {(v >> 2) & 1, (v >> 1) & 1, v & 1};
      int out = 0;
      for (int r = 0; r < 3; ++r) {
        int s = 0;
        for (int c = 0; c < 3; ++c) s ^= a[r][c] & bits[c];
        out = (out << 1) | s;
      }
      return out;
    };
    Mat3 cyc{{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
    Mat3 trans{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
    auto agl_lin = [&](const Mat3 &a) {
      std::vector<int> img(8);
      for (int v = 0; v < 8; ++v) img[v] = mat_vec(a, v) + 1;
      return img;
    };
    std::vector<int> translate(8);
    for (int v = 0; v < 8; ++v) translate[v] = (v ^ 1) + 1;
    seeds.push_back(pad({agl_lin(cyc), agl_lin(trans), translate}));
  }
  return seeds;
}

class Climber {
public:
  explicit Climber(int n) : n_(n), uni_(n) {}

  std::vector<PermGroup> transitive_classes() {
    add_subgroup({uni_.idx(Permutation::identity(n_))}, {});
    for (const auto &gens : perfect_seeds(n_)) {
      auto elems = element_closure(n_, gens);
      std::vector<int> idxs;
      idxs.reserve(elems.size());
      for (const auto &p : elems) idxs.push_back(uni_.idx(p));
      std::sort(idxs.begin(), idxs.end());
      std::vector<int> gidx;
      for (const auto &p : gens) gidx.push_back(uni_.idx(p));
      add_subgroup(std::move(idxs), std::move(gidx));
    }
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) extend(queue_[qi]);

    std::vector<PermGroup> out;
    for (const auto &cls : classes_) {
      std::vector<Permutation> gens;
      for (int gi : cls.gen_idx) gens.push_back(uni_.elems[gi]);
      PermGroup g(n_, std::move(gens));
      if (g.is_transitive()) out.push_back(std::move(g));
    }
    return out;
  }

private:
  void extend(int class_id) {
    // copy what we need: classes_ may reallocate while we add results
    const std::vector<int> gen_idx = classes_[class_id].gen_idx;
    const std::vector<bool> member = classes_[class_id].member;
    const std::vector<int> elements = classes_[class_id].elements;
    const int total = static_cast<int>(uni_.elems.size());

    // one candidate per coset H*s: the whole coset produces the same
    // extension (H is normalized by s, so H s^k = (h s)^k H), and
    // normalizing is a coset property
    std::vector<bool> coset_done = member;
    for (int s = 0; s < total; ++s) {
      if (coset_done[s]) continue;
      {
        const Permutation &sp = uni_.elems[s];
        for (int h : elements) coset_done[uni_.idx(uni_.elems[h] * sp)] = true;
      }
      int s_inv = uni_.inverse_of[s];
      bool normalizes = true;
      for (int g : gen_idx)
        if (!member[uni_.conj_idx(s_inv, g, s)]) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;

      // cyclic extension: union of cosets H * s^k
      std::vector<int> ext = elements;
      std::vector<bool> in_ext = member;
      const Permutation &sp = uni_.elems[s];
      Permutation power = sp;
      while (true) {
        int pidx = uni_.idx(power);
        if (in_ext[pidx]) break;
        for (int h : elements) {
          int idx = uni_.idx(uni_.elems[h] * power);
          if (!in_ext[idx]) {
            in_ext[idx] = true;
            ext.push_back(idx);
          }
        }
        power = power * sp;
      }
      std::sort(ext.begin(), ext.end());
      std::vector<int> gidx = gen_idx;
      gidx.push_back(s);
      add_subgroup(std::move(ext), std::move(gidx));
    }
  }

  // Registers a subgroup unless an identical element set or a conjugate
  // class is already known; enqueues new classes.
  void add_subgroup(std::vector<int> elements, std::vector<int> gen_idx) {
    std::uint64_t fp = fingerprint(elements);
    auto range = seen_.equal_range(fp);
    for (auto it = range.first; it != range.second; ++it)
      if (it->second.first == elements) return;

    std::vector<int> invariant = class_invariant(elements);
    int found = -1;
    auto bucket = buckets_.find(invariant);
    if (bucket != buckets_.end()) {
      for (int cid : bucket->second)
        if (conjugate_to(gen_idx, elements, classes_[cid])) {
          found = cid;
          break;
        }
    }
    if (found >= 0) {
      seen_.emplace(fp, std::make_pair(std::move(elements), found));
      return;
    }

    SubgroupClass cls;
    cls.member.assign(uni_.elems.size(), false);
    for (int e : elements) cls.member[e] = true;
    cls.elements = elements;
    cls.gen_idx = std::move(gen_idx);
    cls.invariant = invariant;
    int cid = static_cast<int>(classes_.size());
    classes_.push_back(std::move(cls));
    buckets_[std::move(invariant)].push_back(cid);
    seen_.emplace(fp, std::make_pair(std::move(elements), cid));
    queue_.push_back(cid);
  }

  std::vector<int> class_invariant(const std::vector<int> &elements) const {
    std::map<int, int> counts;
    for (int e : elements) counts[uni_.type_of[e]]++;
    std::vector<int> inv{static_cast<int>(elements.size())};
    for (auto [t, c] : counts) {
      inv.push_back(t);
      inv.push_back(c);
    }
    return inv;
  }

  bool conjugate_to(const std::vector<int> &gen_idx, const std::vector<int> &elements,
                    const SubgroupClass &other) const {
    if (elements.size() != other.elements.size()) return false;
    if (gen_idx.empty()) return other.elements.size() == 1;
    const int total = static_cast<int>(uni_.elems.size());
    for (int s = 0; s < total; ++s) {
      int s_inv = uni_.inverse_of[s];
      bool ok = true;
      for (int g : gen_idx)
        if (!other.member[uni_.conj_idx(s_inv, g, s)]) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

  int n_;
  Universe uni_;
  std::vector<SubgroupClass> classes_;
  std::vector<int> queue_;
  std::map<std::vector<int>, std::vector<int>> buckets_;
  std::unordered_multimap<std::uint64_t, std::pair<std::vector<int>, int>> seen_;
};

}  // namespace

std::vector<PermGroup> transitive_subgroups(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("transitive_subgroups supports 1 <= n <= 8");
  if (n == 1) return {PermGroup(1, {})};
  Climber climber(n);
  return climber.transitive_classes();
}

}  // namespace schurian::oracle
