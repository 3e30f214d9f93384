#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace panelcheck {

/// Counter-based pseudo-random stream keyed by (seed, tag). Streams with
/// different tags are independent, so adding a draw to one stream never
/// shifts another. Not cryptographic.
class TaggedRng {
 public:
  TaggedRng(std::uint64_t seed, std::string_view tag);

  std::uint64_t next_u64();

  /// Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Uniform integer in [lo, hi] inclusive. Requires lo <= hi.
  int range(int lo, int hi);

  /// Uniform double in [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// Stable 64-bit mix used to derive per-task seeds (e.g. per bench sample).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0);

}  // namespace panelcheck
