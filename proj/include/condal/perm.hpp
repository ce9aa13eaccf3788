#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace condal {

// Permutations of {0..n-1}, the atoms of a conditional algebra. Ranking
// is the Lehmer code in lexicographic order, so rank 0 is the identity
// and rank n!-1 the reversal; unrank(rank(p)) == p.
using Perm = std::vector<std::uint8_t>;

std::uint64_t factorial(int n);

std::uint64_t perm_rank(std::span<const std::uint8_t> perm);
Perm perm_unrank(int n, std::uint64_t rank);

// Throws unless `perm` contains each of 0..n-1 exactly once.
void validate_perm(int n, std::span<const std::uint8_t> perm);

}  // namespace condal
