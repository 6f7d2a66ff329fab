#pragma once

// Exact verification of the Cartan-Muenzner equations
//   |grad F|^2 = p^2 r^{2p-2},   Delta F = c r^{p-2},   c = p^2 (m2 - m1) / 2.
// For odd p, r^{p-2} is not a polynomial and the second equation reads Delta F = 0.

#include <future>
#include <optional>
#include <string>
#include <utility>

#include "isolab/errors.hpp"
#include "isolab/families.hpp"
#include "isolab/polyalg.hpp"

namespace isolab {

struct CMReport {
  int p = 0;
  bool euler_ok = false;
  bool grad_identity_ok = false;
  bool laplace_identity_ok = false;
  ScalarQ3 inferred_c;
  std::optional<Rational> inferred_m_diff;  // 2c/p^2; empty when c is irrational
  Poly grad_residual;
  Poly laplace_residual;
  // Set when checked against a family's declared multiplicities (even p only).
  std::optional<bool> multiplicities_match;

  bool ok() const {
    return euler_ok && grad_identity_ok && laplace_identity_ok && multiplicities_match.value_or(true);
  }
};

inline CMReport verify_cm(const Poly& F, int p) {
  if (p < 1) throw DomainError("verify_cm requires p >= 1");
  const auto d = static_cast<unsigned>(p);
  if (!F.is_homogeneous(d)) {
    // euler_check produces the descriptive error listing offending monomials.
    euler_check(F, d);
  }
  const std::size_t n = F.num_vars();
  CMReport r;
  r.p = p;
  r.euler_ok = euler_check(F, d);

  auto grad_job = [&] {
    return gradient_norm_squared(F) - Poly::radial_power(n, d - 1) * ScalarQ3(static_cast<long>(p) * p);
  };
  auto grad_future = std::async(std::launch::async, grad_job);

  Poly lap = F.laplacian();
  if (p % 2 == 1) {
    r.inferred_c = ScalarQ3(0);
    r.laplace_residual = lap;
  } else {
    // Coefficient of x_1^{p-2} in r^{p-2} is 1, so c is read off that monomial.
    Monomial probe(n);
    probe[0] = d - 2;
    r.inferred_c = lap.coefficient(probe);
    r.laplace_residual = lap - Poly::radial_power(n, (d - 2) / 2) * r.inferred_c;
  }
  r.laplace_identity_ok = r.laplace_residual.is_zero();
  if (r.inferred_c.is_rational()) {
    r.inferred_m_diff = Rational(2 * r.inferred_c.rational_part() / (p * p));
  }

  r.grad_residual = grad_future.get();
  r.grad_identity_ok = r.grad_residual.is_zero();
  return r;
}

/// As verify_cm(F, p), and for even p also compares 2c/p^2 with m2 - m1 as declared.
inline CMReport verify_cm(const IsoparametricFamily& fam) {
  CMReport r = verify_cm(fam.F, fam.p);
  if (fam.p % 2 == 0 && fam.expected_multiplicities) {
    const auto [m1, m2] = *fam.expected_multiplicities;
    r.multiplicities_match = r.inferred_m_diff && *r.inferred_m_diff == Rational(m2 - m1);
  }
  return r;
}

/**
 * Solves m1 + m2 = 2(n-1)/p, m2 - m1 = m_diff for positive integers.
 * For odd p the multiplicities are forced equal and m_diff is ignored.
 */
inline std::pair<int, int> multiplicity_solve(int p, int n, const Rational& m_diff) {
  if (p < 1 || n < 2) throw DomainError("multiplicity_solve requires p >= 1 and n >= 2");
  const Rational sum(2 * (n - 1), p);
  const Rational diff = p % 2 == 1 ? Rational(0) : m_diff;
  Rational m1 = (sum - diff) / 2;
  Rational m2 = (sum + diff) / 2;
  m1.canonicalize();
  m2.canonicalize();
  if (m1.get_den() != 1 || m2.get_den() != 1) {
    throw InconsistencyError("multiplicities are not integral: m1=" + m1.get_str() + ", m2=" + m2.get_str());
  }
  if (sgn(m1) <= 0 || sgn(m2) <= 0) {
    throw InconsistencyError("multiplicities are not positive: m1=" + m1.get_str() + ", m2=" + m2.get_str());
  }
  return {static_cast<int>(m1.get_num().get_si()), static_cast<int>(m2.get_num().get_si())};
}

}  // namespace isolab
