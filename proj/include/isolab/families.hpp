#pragma once

// Cartan-Muenzner polynomials for every family built by the library:
// linear (p=1), sphere products (p=2), Cartan cubics over R/C/H/O (p=3),
// FKM quartics from Clifford systems and Nomizu's quartic (p=4).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isolab/clifford.hpp"
#include "isolab/division_algebras.hpp"
#include "isolab/errors.hpp"
#include "isolab/polyalg.hpp"

namespace isolab {

struct IsoparametricFamily {
  std::string name;
  int p = 1;
  int ambient_dim = 0;  // n+1; the level sets live in S^n
  Poly F;
  // Ordered so that Delta F = p^2 (m2 - m1)/2 r^{p-2}.
  std::optional<std::pair<int, int>> expected_multiplicities;
  std::string provenance;

  int sphere_dim() const { return ambient_dim - 1; }
};

namespace detail {

inline Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }

inline ScalarQ3 q3(long num, long den = 1, long sqrt3_num = 0, long sqrt3_den = 1) {
  return {make_rational(num, den), make_rational(sqrt3_num, sqrt3_den)};
}

/// <P x, x> for an integer matrix P acting on the first P.rows() coordinates.
inline Poly quadratic_form(const IntMatrix& P) {
  const auto n = static_cast<std::size_t>(P.rows());
  Poly q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (P(i, j) == 0) continue;
      Monomial mono(n);
      mono[i] += 1;
      mono[j] += 1;
      q.add_term(std::move(mono), ScalarQ3(static_cast<long>(P(i, j))));
    }
  }
  return q;
}

inline AlgElem<Poly> algebra_block(AlgebraTag tag, std::size_t n, std::size_t offset) {
  std::vector<Poly> coeffs;
  for (int i = 0; i < algebra_dim(tag); ++i) coeffs.push_back(var(n, offset + i));
  return AlgElem<Poly>(tag, std::move(coeffs));
}

}  // namespace detail

/// F = x_{n+1} on R^{n+1}.
inline IsoparametricFamily linear_family(int n) {
  if (n < 1) throw DomainError("linear_family requires n >= 1");
  const auto dim = static_cast<std::size_t>(n + 1);
  return {"linear(n=" + std::to_string(n) + ")", 1, n + 1, Poly::variable(dim, dim - 1),
          std::make_pair(n - 1, n - 1), "great/small spheres: F = x_{n+1}"};
}

/// F = sum_{i<=k} x_i^2 - sum_{j>k} x_j^2 on R^{n+1}.
inline IsoparametricFamily product_family(int n, int k) {
  if (n < 1) throw DomainError("product_family requires n >= 1");
  if (k < 1 || k > n) {
    throw DomainError("product_family requires 1 <= k <= n, got k=" + std::to_string(k));
  }
  const auto dim = static_cast<std::size_t>(n + 1);
  Poly F(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Monomial mono(dim);
    mono[i] = 2;
    F.add_term(std::move(mono), ScalarQ3(i < static_cast<std::size_t>(k) ? 1 : -1));
  }
  // M_+ = {F = 1} is S^{k-1}, of codimension (n-k)+1, so m1 = n-k.
  return {"product(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")", 2, n + 1, std::move(F),
          std::make_pair(n - k, k - 1), "sphere products S^{k-1}(r) x S^{n-k}(s)"};
}

/**
 * Cartan's cubic on R^2 + F^3, F in {R, C, H, O}, coordinates (u, v, x, y, z):
 *
 *   u^3 - 3uv^2 + 3/2 u (|x|^2 + |y|^2 - 2|z|^2) + 3sqrt3/2 v (|x|^2 - |y|^2)
 *       + 3sqrt3 re((xy)z)
 */
inline IsoparametricFamily cartan_cubic(AlgebraTag tag) {
  using detail::q3;
  const int d = algebra_dim(tag);
  const auto n = static_cast<std::size_t>(3 * d + 2);
  const Poly u = detail::var(n, 0), v = detail::var(n, 1);
  const auto x = detail::algebra_block(tag, n, 2);
  const auto y = detail::algebra_block(tag, n, 2 + d);
  const auto z = detail::algebra_block(tag, n, 2 + 2 * d);

  Poly F = u * u * u - u * v * v * ScalarQ3(3);
  F += u * (x.norm2() + y.norm2() - z.norm2() * ScalarQ3(2)) * q3(3, 2);
  F += v * (x.norm2() - y.norm2()) * q3(0, 1, 3, 2);
  F += ((x * y) * z).re() * q3(0, 1, 3, 1);
  return {"cartan-cubic(" + algebra_name(tag) + ")", 3, static_cast<int>(n), std::move(F),
          std::make_pair(d, d), "Cartan cubic over " + algebra_name(tag) + " (tube over P^2(F))"};
}

/**
 * F = <x,x>^2 - 2 sum_{i=0}^{m} <P_i x, x>^2 on R^{2l}. The sum runs over all
 * m+1 matrices of the system; with fewer the Laplacian no longer matches the
 * multiplicities (m, l-m-1).
 */
inline IsoparametricFamily fkm_family(const CliffordSystem& s) {
  const int m1 = s.m;
  const int m2 = s.l - s.m - 1;
  if (m1 < 1) throw PreconditionError("fkm_family: m1 = m must be positive");
  if (m2 < 1) {
    throw PreconditionError("fkm_family: m2 = l - m - 1 = " + std::to_string(m2) +
                            " must be positive (l=" + std::to_string(s.l) + ", m=" + std::to_string(s.m) + ")");
  }
  const auto n = static_cast<std::size_t>(2 * s.l);
  Poly F = Poly::radial_power(n, 2);
  for (const auto& P : s.P) {
    Poly q = detail::quadratic_form(P);
    F -= q * q * ScalarQ3(2);
  }
  return {"fkm(m=" + std::to_string(s.m) + ",l=" + std::to_string(s.l) + ")", 4, static_cast<int>(n),
          std::move(F), std::make_pair(m1, m2), "FKM quartic <x,x>^2 - 2 sum_i <P_i x,x>^2"};
}

inline IsoparametricFamily fkm_family(int m, int k) {
  auto fam = fkm_family(build_system(build_generators(m, k)));
  fam.name = "fkm(m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
  return fam;
}

/// G = (|x|^2 - |y|^2)^2 + 4 <x,y>^2 on R^{n+1} x R^{n+1}.
inline Poly nomizu_quartic(int n) {
  const auto half = static_cast<std::size_t>(n + 1);
  const std::size_t dim = 2 * half;
  Poly a(dim), b(dim);
  for (std::size_t i = 0; i < half; ++i) {
    const Poly xi = detail::var(dim, i), yi = detail::var(dim, half + i);
    a += xi * xi - yi * yi;
    b += xi * yi;
  }
  return a * a + b * b * ScalarQ3(4);
}

/// Cartan-Muenzner normalization F = 2G - r^4 of Nomizu's quartic on S^{2n+1}.
inline IsoparametricFamily nomizu_family(int n) {
  if (n < 2) throw DomainError("nomizu_family requires n >= 2");
  const auto dim = static_cast<std::size_t>(2 * n + 2);
  Poly F = nomizu_quartic(n) * ScalarQ3(2) - Poly::radial_power(dim, 2);
  return {"nomizu(n=" + std::to_string(n) + ")", 4, static_cast<int>(dim), std::move(F),
          std::make_pair(n - 1, 1), "Nomizu quartic on the oriented 2-plane Grassmannian orbit"};
}

/**
 * (1/2) det of
 *   | x5 - sqrt3 x4   sqrt3 x3        sqrt3 x2 |
 *   | sqrt3 x3        x5 + sqrt3 x4   sqrt3 x1 |
 *   | sqrt3 x2        sqrt3 x1        -2 x5    |
 * with the entry signs exactly as written; variables x1..x5 are indices 0..4.
 */
inline Poly nurowski_det_cubic() {
  using detail::var;
  constexpr std::size_t n = 5;
  const ScalarQ3 s3 = ScalarQ3::sqrt3();
  const Poly x1 = var(n, 0), x2 = var(n, 1), x3 = var(n, 2), x4 = var(n, 3), x5 = var(n, 4);
  const Poly a[3][3] = {{x5 - x4 * s3, x3 * s3, x2 * s3},
                        {x3 * s3, x5 + x4 * s3, x1 * s3},
                        {x2 * s3, x1 * s3, x5 * ScalarQ3(-2)}};
  Poly det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
             a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  return det * detail::q3(1, 2);
}

/// x5^3 + 3/2 x5 (x1^2 + x2^2) - 3 x5 (x3^2 + x4^2) + 3sqrt3/2 x4 (x1^2 - x2^2) + 3sqrt3 x1 x2 x3.
inline Poly nurowski_expansion() {
  using detail::q3;
  using detail::var;
  constexpr std::size_t n = 5;
  const Poly x1 = var(n, 0), x2 = var(n, 1), x3 = var(n, 2), x4 = var(n, 3), x5 = var(n, 4);
  Poly F = x5 * x5 * x5;
  F += x5 * (x1 * x1 + x2 * x2) * q3(3, 2);
  F -= x5 * (x3 * x3 + x4 * x4) * ScalarQ3(3);
  F += x4 * (x1 * x1 - x2 * x2) * q3(0, 1, 3, 2);
  F += x1 * x2 * x3 * q3(0, 1, 3, 1);
  return F;
}

/// Cartan (u, v, x, y, z) -> Nurowski (x5, x4, x1, x2, x3), as a variable permutation.
inline const std::vector<std::size_t>& cartan_to_nurowski_renaming() {
  static const std::vector<std::size_t> perm = {4, 3, 0, 1, 2};
  return perm;
}

/// Named family selector shared by the CLI and the acceptance suite.
struct FamilySelector {
  std::string family;  // linear | product | cartan-cubic | fkm | nomizu
  int n = 7;
  int k = 1;
  int m = 1;
  AlgebraTag algebra = AlgebraTag::R;
};

inline IsoparametricFamily make_family(const FamilySelector& sel) {
  if (sel.family == "linear") return linear_family(sel.n);
  if (sel.family == "product") return product_family(sel.n, sel.k);
  if (sel.family == "cartan-cubic") return cartan_cubic(sel.algebra);
  if (sel.family == "fkm") return fkm_family(sel.m, sel.k);
  if (sel.family == "nomizu") return nomizu_family(sel.n);
  throw DomainError("unknown family '" + sel.family + "'");
}

}  // namespace isolab
