#pragma once

#include <cstdint>
#include <random>

namespace gom {

// splitmix64 finalizer; decorrelates structured seed inputs.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derive an independent stream seed from a base seed and a stream tag.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
  return mix64(mix64(base) ^ mix64(stream));
}

inline uint64_t derive_seed(uint64_t base, uint64_t stream, uint64_t index) {
  return mix64(derive_seed(base, stream) ^ mix64(index + 0x51ed2701ull));
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(mix64(seed)); }

}  // namespace gom
