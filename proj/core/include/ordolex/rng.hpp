#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ordolex {

// 64-bit FNV-1a. Stable across platforms; used for seed derivation and
// config hashing, never for untrusted-input hardening.
std::uint64_t fnv1a64(std::string_view bytes);

// Independent, reproducible stream seed for one sentence and one purpose
// ("variants", "cv-folds", ...). Identical (global_seed, sent_id, purpose)
// gives identical streams regardless of processing order or thread count.
std::uint64_t stable_seed(std::uint64_t global_seed, std::string_view sent_id,
                          std::string_view purpose);

// mt19937_64 plus rejection sampling. std::uniform_int_distribution is
// implementation-defined, so bounded draws are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::vector<int> random_permutation(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ordolex
