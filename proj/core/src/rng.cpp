#include "ordolex/rng.hpp"

namespace ordolex {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stable_seed(std::uint64_t global_seed, std::string_view sent_id,
                          std::string_view purpose) {
  std::uint64_t h = splitmix64(global_seed ^ fnv1a64(sent_id));
  return splitmix64(h ^ fnv1a64(purpose));
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection against the biased tail keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x < threshold);
  return x % n;
}

std::vector<int> Rng::random_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  shuffle(p);
  return p;
}

}  // namespace ordolex
