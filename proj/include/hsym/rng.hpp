#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hsym {

// mt19937_64 with hand-rolled uniform/normal draws so the stream does not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  int below(int n) { return int(bits() % std::uint64_t(n)); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);
// Seed for case `index` of `suite`; independent of the order suites run in.
std::uint64_t case_seed(std::uint64_t master, std::string_view suite, std::uint64_t index);

}  // namespace hsym
