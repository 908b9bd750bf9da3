#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace bdglab {

std::uint64_t splitmix64(std::uint64_t x);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// Key of a named substream of the root seed.
std::uint64_t derive_key(std::uint64_t root_seed, std::string_view tag);

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::uint64_t key);

// Deterministic stream addressed by (key, replicate, coordinate). Draws are
// a pure function of the address and the draw index, so streams can be
// created on any thread in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t key, std::uint64_t replicate, std::uint32_t coordinate)
      : key_(key), replicate_(replicate), coordinate_(coordinate) {}

  // Uniform on (0, 1] with 53 random bits.
  double uniform();
  double normal();
  void fill_normal(std::span<double> out);

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t replicate_;
  std::uint32_t coordinate_;
  std::uint32_t block_ = 0;
  std::array<std::uint64_t, 2> words_{};
  int word_pos_ = 2;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bdglab
