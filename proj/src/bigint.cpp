#include "schurian/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace schurian {

BigUint::BigUint(std::uint64_t v) {
  limbs_.push_back(static_cast<std::uint32_t>(v));
  limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  trim();
}

void BigUint::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUint &BigUint::operator*=(std::uint64_t v) {
  std::uint32_t lo = static_cast<std::uint32_t>(v);
  std::uint32_t hi = static_cast<std::uint32_t>(v >> 32);
  std::vector<std::uint32_t> out(limbs_.size() + 2, 0);
  for (std::size_t pass = 0; pass < 2; ++pass) {
    std::uint32_t m = pass == 0 ? lo : hi;
    if (m == 0) continue;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * m +
                          out[i + pass] + carry;
      out[i + pass] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    std::size_t j = limbs_.size() + pass;
    while (carry) {
      std::uint64_t cur = out[j] + carry;
      out[j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      ++j;
    }
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigUint BigUint::operator*(std::uint64_t v) const {
  BigUint r = *this;
  r *= v;
  return r;
}

bool BigUint::operator<(const BigUint &o) const {
  if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size();
  for (std::size_t i = limbs_.size(); i-- > 0;)
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
  return false;
}

std::uint64_t BigUint::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("BigUint::to_u64: value too large");
  std::uint64_t v = limbs_[0];
  if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  return v;
}

std::string BigUint::to_string() const {
  // repeated division by 10^9
  std::vector<std::uint32_t> work(limbs_.rbegin(), limbs_.rend());  // big endian
  std::string out;
  while (!(work.size() == 1 && work[0] == 0)) {
    std::uint64_t rem = 0;
    std::vector<std::uint32_t> quot;
    for (std::uint32_t limb : work) {
      std::uint64_t cur = (rem << 32) | limb;
      std::uint32_t q = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
      if (!quot.empty() || q != 0) quot.push_back(q);
    }
    if (quot.empty()) quot.push_back(0);
    std::string chunk = std::to_string(rem);
    bool last = quot.size() == 1 && quot[0] == 0;
    if (!last) chunk = std::string(9 - chunk.size(), '0') + chunk;
    out = chunk + out;
    work = std::move(quot);
  }
  return out.empty() ? "0" : out;
}

}  // namespace schurian
