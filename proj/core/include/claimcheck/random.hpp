#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace claimcheck {

// std::mt19937_64's output sequence is fixed by the standard, but the standard
// distributions and std::shuffle are not. Everything seeded in this project goes
// through the helpers below so that artifacts are identical across toolchains.
using Rng = std::mt19937_64;

// Mixes a master seed with a stream label ("holdout/CT20-AR-08", ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) noexcept;

Rng make_rng(std::uint64_t master, std::string_view stream);

// Uniform integer in [0, bound). bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform real in [0, 1) from the top 53 bits.
double uniform_unit(Rng& rng);

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace claimcheck
