#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace condal {

// Fixed-size dynamic bitset. Backs the atom sets of conditional algebras,
// which can run to n! bits, so word-level access is exposed for the
// chunked enumeration kernels. Unused tail bits are kept zero so that
// equality and subset tests are plain word comparisons.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::uint64_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::uint64_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t* data() { return words_.data(); }
  const std::uint64_t* data() const { return words_.data(); }

  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void set_all() {
    for (auto& w : words_) w = ~std::uint64_t{0};
    trim_tail();
  }
  void reset_all() {
    for (auto& w : words_) w = 0;
  }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == nbits_; }

  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset& operator^=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator^(DynBitset a, const DynBitset& b) { return a ^= b; }

  DynBitset operator~() const {
    DynBitset r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim_tail();
    return r;
  }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool operator==(const DynBitset& o) const = default;

  // Index of the first set bit, or -1 when empty.
  std::int64_t find_first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return static_cast<std::int64_t>(i * 64 +
                                         std::countr_zero(words_[i]));
    return -1;
  }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(i * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint64_t> set_indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(count());
    for_each_set([&](std::uint64_t i) { out.push_back(i); });
    return out;
  }

 private:
  void trim_tail() {
    if (nbits_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
  }

  std::uint64_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace condal
