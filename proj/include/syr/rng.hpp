#pragma once

#include "syr/nat.hpp"

namespace syr {

// Counter-based generator (splitmix64 finalizer over a keyed counter).
// Output i of stream s depends only on (seed, s, i), so parallel consumers
// get identical values regardless of scheduling.
class CounterRng {
 public:
  CounterRng(u64 seed, u64 stream)
      : key_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

  u64 at(u64 i) const { return mix(key_ + (i + 1) * 0x9E3779B97F4A7C15ull); }

  // bit/uniform views of counter position i
  bool bit_at(u64 i) const { return at(i) >> 63; }
  double uniform_at(u64 i) const { return double(at(i) >> 11) * 0x1.0p-53; }

 private:
  static u64 mix(u64 z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  u64 key_;
};

}  // namespace syr
