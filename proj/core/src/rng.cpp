#include "panelcheck/rng.hpp"

namespace panelcheck {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

TaggedRng::TaggedRng(std::uint64_t seed, std::string_view tag)
    : key_(mix64(seed + kGolden) ^ fnv1a64(tag)) {}

std::uint64_t TaggedRng::next_u64() {
  counter_ += kGolden;
  return mix64(key_ + counter_);
}

std::uint64_t TaggedRng::below(std::uint64_t n) {
  // multiply-shift; bias is negligible for the ranges used here
  const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

int TaggedRng::range(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double TaggedRng::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (a + kGolden));
  h = mix64(h ^ (b + 2 * kGolden));
  h = mix64(h ^ (c + 3 * kGolden));
  return h;
}

}  // namespace panelcheck
