#include "schurian/scheme.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace schurian {

bool RelationMatrix::operator<(const RelationMatrix &o) const {
  if (n != o.n) return n < o.n;
  if (d != o.d) return d < o.d;
  return entries < o.entries;
}

RelationMatrix read_relation_matrix(std::istream &in) {
  RelationMatrix m;
  if (!(in >> m.n >> m.d) || m.n < 1 || m.d < 0)
    throw ValidationError("relation matrix: bad header, expected \"n d\"");
  m.entries.resize(static_cast<std::size_t>(m.n) * m.n);
  for (auto &e : m.entries)
    if (!(in >> e)) throw ValidationError("relation matrix: truncated entries");
  return m;
}

RelationMatrix read_relation_matrix_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file: " + path);
  return read_relation_matrix(in);
}

void write_relation_matrix(std::ostream &out, const RelationMatrix &m) {
  out << m.n << " " << m.d << "\n";
  for (int x = 1; x <= m.n; ++x) {
    for (int y = 1; y <= m.n; ++y) {
      if (y > 1) out << ' ';
      out << m.at(x, y);
    }
    out << "\n";
  }
}

namespace {

std::string pair_str(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

}  // namespace

AssociationScheme AssociationScheme::from_relation_matrix(RelationMatrix m) {
  const int n = m.n;
  if (n < 1) throw ValidationError("scheme order must be >= 1");
  const int d = m.d;
  const int nc = d + 1;

  std::vector<bool> present(nc, false);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      int c = m.at(x, y);
      if (c < 0 || c > d)
        throw ValidationError("label " + std::to_string(c) + " at " + pair_str(x, y) +
                              " outside {0.." + std::to_string(d) + "}");
      if (x == y && c != 0)
        throw ValidationError("diagonal entry at " + pair_str(x, y) + " is " + std::to_string(c) + ", expected 0");
      if (x != y && c == 0)
        throw ValidationError("label 0 occurs off the diagonal at " + pair_str(x, y));
      present[c] = true;
    }
  }
  for (int c = 0; c <= d; ++c)
    if (!present[c]) throw ValidationError("label " + std::to_string(c) + " never occurs");

  // converse map: the transpose of each class must be a single class
  std::vector<int> conv(nc, -1);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      int c = m.at(x, y), ct = m.at(y, x);
      if (conv[c] == -1) conv[c] = ct;
      else if (conv[c] != ct)
        throw ValidationError("converse of class " + std::to_string(c) + " is not a single class (witness " +
                              pair_str(x, y) + ")");
    }
  }
  for (int c = 0; c <= d; ++c)
    if (conv[conv[c]] != c)
      throw ValidationError("converse map is not an involution at class " + std::to_string(c));

  // intersection numbers from one representative pair per class, then
  // re-checked over every pair
  std::vector<std::pair<int, int>> rep(nc, {-1, -1});
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      int c = m.at(x, y);
      if (rep[c].first < 0) rep[c] = {x, y};
    }

  std::vector<int> tensor(static_cast<std::size_t>(nc) * nc * nc, 0);
  auto slot = [&](int i, int j, int k) -> int & {
    return tensor[(static_cast<std::size_t>(i) * nc + j) * nc + k];
  };
  for (int k = 0; k <= d; ++k) {
    auto [x, y] = rep[k];
    for (int z = 1; z <= n; ++z) slot(m.at(x, z), m.at(z, y), k)++;
  }

  std::vector<int> counts(static_cast<std::size_t>(nc) * nc, 0);
  std::vector<int> touched;
  touched.reserve(n);
  for (int x = 1; x <= n; ++x) {
    for (int y = 1; y <= n; ++y) {
      int k = m.at(x, y);
      touched.clear();
      for (int z = 1; z <= n; ++z) {
        int idx = m.at(x, z) * nc + m.at(z, y);
        if (counts[idx]++ == 0) touched.push_back(idx);
      }
      // Both the pair's counts and the representative's sum to n over (i,j),
      // so equality on the touched entries forces the untouched ones to 0.
      for (int idx : touched) {
        int i = idx / nc, j = idx % nc;
        if (counts[idx] != slot(i, j, k)) {
          throw ValidationError("p_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(k) +
                                " is not constant: pair " + pair_str(x, y) + " gives " + std::to_string(counts[idx]) +
                                ", representative gives " + std::to_string(slot(i, j, k)));
        }
        counts[idx] = 0;
      }
    }
  }

  AssociationScheme s;
  s.rel_ = std::move(m);
  s.converse_ = std::move(conv);
  s.tensor_ = std::move(tensor);
  s.valencies_.resize(nc);
  for (int i = 0; i <= d; ++i) s.valencies_[i] = s.p(i, s.converse_[i], 0);
  long long total = 0;
  for (int v : s.valencies_) total += v;
  if (total != n) throw ValidationError("valencies do not sum to n");
  return s;
}

bool AssociationScheme::is_symmetric() const {
  for (int i = 0; i <= rel_.d; ++i)
    if (converse_[i] != i) return false;
  return true;
}

bool AssociationScheme::is_commutative() const {
  for (int i = 0; i <= rel_.d; ++i)
    for (int j = i + 1; j <= rel_.d; ++j)
      for (int k = 0; k <= rel_.d; ++k)
        if (p(i, j, k) != p(j, i, k)) return false;
  return true;
}

bool AssociationScheme::is_primitive() const {
  const int n = rel_.n;
  std::vector<int> queue;
  std::vector<bool> seen(n);
  for (int c = 1; c <= rel_.d; ++c) {
    for (int dir = 0; dir < 2; ++dir) {
      std::fill(seen.begin(), seen.end(), false);
      queue.assign(1, 1);
      seen[0] = true;
      int count = 1;
      while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (int v = 1; v <= n; ++v) {
          int lab = dir == 0 ? rel_.at(u, v) : rel_.at(v, u);
          if (lab == c && !seen[v - 1]) {
            seen[v - 1] = true;
            ++count;
            queue.push_back(v);
          }
        }
      }
      if (count != n) return false;
    }
  }
  return true;
}

RelationMatrix AssociationScheme::symmetrization() const {
  std::vector<int> newlab(rel_.d + 1, -1);
  int next = 0;
  for (int i = 0; i <= rel_.d; ++i) {
    if (newlab[i] >= 0) continue;
    newlab[i] = next;
    newlab[converse_[i]] = next;
    ++next;
  }
  RelationMatrix out;
  out.n = rel_.n;
  out.d = next - 1;
  out.entries.resize(rel_.entries.size());
  for (std::size_t i = 0; i < rel_.entries.size(); ++i) out.entries[i] = newlab[rel_.entries[i]];
  return out;
}

bool AssociationScheme::is_stratifiable() const {
  if (is_symmetric()) return true;
  try {
    from_relation_matrix(symmetrization());
    return true;
  } catch (const ValidationError &) {
    return false;
  }
}

RelationMatrix relabel(const RelationMatrix &m, const std::vector<int> &sigma_f,
                       const std::vector<int> &sigma_g) {
  RelationMatrix out;
  out.n = m.n;
  out.d = m.d;
  out.entries.assign(m.entries.size(), 0);
  for (int x = 1; x <= m.n; ++x) {
    for (int y = 1; y <= m.n; ++y) {
      int fx = sigma_f.empty() ? x : sigma_f[x - 1];
      int fy = sigma_f.empty() ? y : sigma_f[y - 1];
      int c = m.at(x, y);
      out.at(fx, fy) = sigma_g.empty() ? c : sigma_g[c];
    }
  }
  return out;
}

}  // namespace schurian
