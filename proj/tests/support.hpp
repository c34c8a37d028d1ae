#pragma once

#include "vdw/response.hpp"

#include <cmath>
#include <random>

namespace vdw::test {

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  Resonance resonance() {
    return {uniform(0.3, 4.0), uniform(0.3, 3.0), log_uniform(1e-3, 0.5)};
  }
  MaterialModel material() {
    return MaterialModel::drude_lorentz(resonance(), resonance());
  }
  AtomModel atom() { return {uniform(0.1, 2.0), uniform(0.1, 2.0), uniform(0.5, 2.0)}; }

private:
  std::mt19937_64 gen_;
};

} // namespace vdw::test
