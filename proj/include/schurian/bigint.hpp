#ifndef SCHURIAN_BIGINT_HPP
#define SCHURIAN_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace schurian {

// Unsigned big integer covering permutation group orders (products of
// transversal sizes, e.g. |S_48| ~ 1.2e61).
class BigUint {
public:
  BigUint() : limbs_{0} {}
  BigUint(std::uint64_t v);

  BigUint &operator*=(std::uint64_t v);
  BigUint operator*(std::uint64_t v) const;

  bool operator==(const BigUint &o) const { return limbs_ == o.limbs_; }
  bool operator!=(const BigUint &o) const { return !(*this == o); }
  bool operator<(const BigUint &o) const;
  bool operator<=(const BigUint &o) const { return *this < o || *this == o; }

  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;  // throws if it does not fit

  std::string to_string() const;

private:
  void trim();
  std::vector<std::uint32_t> limbs_;  // little endian, base 2^32
};

}  // namespace schurian

#endif
