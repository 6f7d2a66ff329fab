#pragma once

// Seeded generators shared by the unit suites.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "isolab/polyalg.hpp"

namespace isolab::testing {

inline ScalarQ3 random_q3(std::mt19937_64& rng, bool with_sqrt3 = true) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  ScalarQ3 a(make_rational(num(rng), den(rng)));
  if (with_sqrt3) a += ScalarQ3(Rational(0), make_rational(num(rng), den(rng)));
  return a;
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t n, unsigned degree) {
  Monomial m(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (unsigned d = 0; d < degree; ++d) m[pick(rng)] += 1;
  return m;
}

/// Homogeneous when `homogeneous`, otherwise mixed degrees up to `degree`.
inline Poly random_poly(std::mt19937_64& rng, std::size_t n, unsigned degree, int terms, bool homogeneous = true) {
  Poly p(n);
  std::uniform_int_distribution<unsigned> deg(0, degree);
  for (int t = 0; t < terms; ++t) {
    p.add_term(random_monomial(rng, n, homogeneous ? degree : deg(rng)), random_q3(rng));
  }
  return p;
}

inline Eigen::VectorXd random_point(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = g(rng);
  return x;
}

inline std::vector<double> as_vector(const Eigen::VectorXd& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace isolab::testing
