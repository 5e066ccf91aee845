#ifndef SCHURIAN_PERM_HPP
#define SCHURIAN_PERM_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "schurian/bigint.hpp"

namespace schurian {

// Permutation of {1..n}. Composition is left-to-right: (p * q)(x) = q(p(x)),
// matching the convention of cycle products in the database format.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point - 1]; }
  const std::vector<int> &images() const { return images_; }

  Permutation operator*(const Permutation &o) const;
  Permutation inverse() const;
  bool is_identity() const;

  bool operator==(const Permutation &o) const { return images_ == o.images_; }
  bool operator!=(const Permutation &o) const { return images_ != o.images_; }
  bool operator<(const Permutation &o) const { return images_ < o.images_; }

  std::size_t hash() const;

private:
  std::vector<int> images_;  // images_[i] = image of point i+1
};

// Parses a product of cycles, applied left to right, e.g. "(1,3,5,7)(2,4,6,8)".
// "()" denotes the identity. Throws std::invalid_argument on malformed input,
// out-of-range points, or a point repeated within one cycle.
Permutation parse_cycles(const std::string &text, int degree);

// Disjoint cycle form: cycles ordered by smallest moved point, each cycle
// starting at its smallest member; identity renders as "()".
std::string format_cycles(const Permutation &p);

// Orbit partition of {1..n} x {1..n}: label[(x-1)*n + (y-1)] in {0..classes-1},
// class 0 is the diagonal, classes ordered by lexicographically smallest pair.
struct PairPartition {
  int n = 0;
  int classes = 0;
  std::vector<int> label;
  int at(int x, int y) const { return label[(x - 1) * n + (y - 1)]; }
};

// Permutation group given by generators, with a lazily built deterministic
// stabilizer chain (base = smallest moved point at each level) for order and
// membership queries. Immutable after construction; safe to share across
// threads, chain construction is internally synchronised.
class PermGroup {
public:
  PermGroup(int degree, std::vector<Permutation> generators);
  PermGroup(const PermGroup &o);
  PermGroup(PermGroup &&o) noexcept;
  PermGroup &operator=(const PermGroup &o);
  PermGroup &operator=(PermGroup &&o) noexcept;

  int degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return gens_; }

  BigUint order() const;
  bool contains(const Permutation &p) const;  // throws on degree mismatch
  bool is_transitive() const;

  // Orbit partition of ordered pairs; throws std::invalid_argument unless
  // the group is transitive.
  PairPartition orbitals() const;

  PermGroup conjugate(const Permutation &s) const;

private:
  struct Chain;
  const Chain &chain() const;
  std::shared_ptr<const Chain> chain_snapshot() const;

  int degree_;
  std::vector<Permutation> gens_;  // identity dropped, duplicates removed
  mutable std::mutex chain_mutex_;
  mutable std::shared_ptr<const Chain> chain_;  // built once, then immutable
};

// True iff the two groups have identical element sets.
bool same_group(const PermGroup &a, const PermGroup &b);

// Greedily drops generators that are redundant (already generated by the
// others). Preserves the generated group.
std::vector<Permutation> reduce_generating_set(int degree, const std::vector<Permutation> &gens);

// Group generator files: first line "degree N", then one permutation per
// line in cycle notation. A file may contain several such blocks; each
// "degree" line starts a new group.
std::vector<PermGroup> read_groups(std::istream &in);
PermGroup read_group_file(const std::string &path);
std::vector<PermGroup> read_groups_file(const std::string &path);
void write_group(std::ostream &out, const PermGroup &g);

}  // namespace schurian

#endif
