#ifndef KRONLAP_RNG_HPP
#define KRONLAP_RNG_HPP

#include <cmath>
#include <cstdint>

#include "kronlap/grid.hpp"

namespace kronlap {

// splitmix64: tiny, seedable, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return static_cast<double>((next() >> 11) + 1) * 0x1p-53;
  }

  // standard complex normal: independent N(0,1) parts via Box-Muller
  Complex gaussian() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * M_PI * uniform();
    return Complex(r * std::cos(phi), r * std::sin(phi));
  }

 private:
  std::uint64_t state_;
};

inline TensorField gaussian_field(const GridPtr& grid, std::uint64_t seed) {
  TensorField f(grid);
  Rng rng(seed);
  for (Complex& v : f.data) v = rng.gaussian();
  return f;
}

inline std::vector<Complex> gaussian_vector(std::size_t n, std::uint64_t seed) {
  std::vector<Complex> v(n);
  Rng rng(seed);
  for (Complex& x : v) x = rng.gaussian();
  return v;
}

}  // namespace kronlap

#endif
