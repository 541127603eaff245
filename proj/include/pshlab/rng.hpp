#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>

namespace pshlab {

/// SplitMix64 generator. Hand-rolled so that sweeps are bit-reproducible
/// across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // Box-Muller; one draw per call keeps the stream layout simple.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  Eigen::VectorXd unit_vector(int dim) {
    Eigen::VectorXd v(dim);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v(i) = normal();
      norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    return v / std::sqrt(norm2);
  }

  Eigen::VectorXd box_vector(int dim, double half_width) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = uniform(-half_width, half_width);
    return v;
  }

 private:
  std::uint64_t state_;
};

/// FNV-1a, used for config provenance hashes and seed derivation.
inline std::uint64_t fnv1a(const void* data, std::size_t size,
                           std::uint64_t seed = 0xCBF29CE484222325ull) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(s.data(), s.size());
}

}  // namespace pshlab
