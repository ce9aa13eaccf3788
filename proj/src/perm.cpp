#include "condal/perm.hpp"

#include "condal/errors.hpp"

namespace condal {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw Error("factorial argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void validate_perm(int n, std::span<const std::uint8_t> perm) {
  if (static_cast<int>(perm.size()) != n)
    throw Error("permutation has wrong length");
  std::uint32_t seen = 0;
  for (auto v : perm) {
    if (v >= n) throw Error("permutation entry out of range");
    if (seen & (1u << v)) throw Error("repeated permutation entry");
    seen |= 1u << v;
  }
}

std::uint64_t perm_rank(std::span<const std::uint8_t> perm) {
  int n = static_cast<int>(perm.size());
  validate_perm(n, perm);
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller_right;
    rank += static_cast<std::uint64_t>(smaller_right) * factorial(n - 1 - i);
  }
  return rank;
}

Perm perm_unrank(int n, std::uint64_t rank) {
  if (rank >= factorial(n)) throw Error("permutation rank out of range");
  Perm remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = static_cast<std::uint8_t>(i);
  Perm out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t f = factorial(n - 1 - i);
    std::size_t idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(remaining[idx]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

}  // namespace condal
