#pragma once

/**
 * Representations of the Clifford relations and Clifford systems.
 *
 * A representation of C_{m-1} on R^l is a list of m-1 skew-symmetric
 * orthogonal integer matrices E_i with E_i E_j + E_j E_i = -2 delta_ij Id.
 * From it we assemble the Clifford system on R^{2l}
 *
 *   P_0(x,y) = (x,-y),  P_1(x,y) = (y,x),  P_{1+i}(x,y) = (E_i y, -E_i x),
 *
 * symmetric matrices with P_i P_j + P_j P_i = 2 delta_ij Id. All checks run in
 * integer arithmetic, so there is no tolerance anywhere in this module.
 *
 * Irreducible generators for m <= 8 are left multiplications by imaginary
 * units of C, H or O (dimension delta(m)); larger m use the periodicity step
 * E_i -> E_i (x) w, plus Id (x) F_j for eight generators F_j on R^16 whose
 * product w is a symmetric involution anticommuting with every F_j.
 */

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "isolab/division_algebras.hpp"
#include "isolab/errors.hpp"

namespace isolab {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct CliffordGenerators {
  int m = 1;
  int l = 1;
  std::vector<IntMatrix> E;  // m-1 matrices of size l x l
};

struct CliffordSystem {
  int m = 1;
  int l = 1;
  std::vector<IntMatrix> P;  // m+1 matrices of size 2l x 2l
};

/// Dimension of an irreducible representation of C_{m-1}.
inline int delta(int m) {
  if (m <= 0) throw DomainError("delta(m) requires m >= 1, got " + std::to_string(m));
  static constexpr int base[8] = {1, 2, 4, 4, 8, 8, 8, 8};
  if (m <= 8) return base[m - 1];
  return 16 * delta(m - 8);
}

namespace detail {

inline IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Matrix of x -> e_unit * x in the given algebra.
inline IntMatrix left_multiplication(AlgebraTag tag, int unit) {
  const auto& sc = structure_constants(tag);
  const int d = sc.dim();
  IntMatrix L = IntMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    const auto& bp = sc.product(unit, j);
    L(bp.index, j) = bp.sign;
  }
  return L;
}

inline std::vector<IntMatrix> base_generators(int m) {
  std::vector<IntMatrix> E;
  if (m == 1) return E;
  const AlgebraTag tag = m == 2 ? AlgebraTag::C : (m <= 4 ? AlgebraTag::H : AlgebraTag::O);
  for (int i = 1; i < m; ++i) E.push_back(left_multiplication(tag, i));
  return E;
}

/// Eight anticommuting complex structures F_1..F_8 on R^16.
inline std::vector<IntMatrix> periodicity_generators() {
  IntMatrix swap(2, 2), rot(2, 2);
  swap << 0, 1, 1, 0;
  rot << 0, 1, -1, 0;
  std::vector<IntMatrix> F;
  for (const auto& e : base_generators(8)) F.push_back(kron(swap, e));
  F.push_back(kron(rot, IntMatrix::Identity(8, 8)));
  return F;
}

inline std::vector<IntMatrix> irreducible_generators(int m) {
  if (m <= 8) return base_generators(m);
  const auto inner = irreducible_generators(m - 8);
  const auto F = periodicity_generators();
  IntMatrix omega = IntMatrix::Identity(16, 16);
  for (const auto& f : F) omega = omega * f;
  const Eigen::Index d = delta(m - 8);
  std::vector<IntMatrix> E;
  for (const auto& e : inner) E.push_back(kron(e, omega));
  for (const auto& f : F) E.push_back(kron(IntMatrix::Identity(d, d), f));
  return E;
}

}  // namespace detail

/// Residual report; all norms are exact integer sums of squares.
struct CliffordValidation {
  struct PairResidual {
    int i = 0;
    int j = 0;
    std::int64_t residual = 0;  // squared Frobenius norm of P_iP_j + P_jP_i - 2 delta_ij Id
  };
  std::vector<PairResidual> pairs;
  std::vector<bool> symmetric;
  std::vector<std::int64_t> traces;

  bool ok() const {
    for (const auto& p : pairs)
      if (p.residual != 0) return false;
    for (bool s : symmetric)
      if (!s) return false;
    return true;
  }

  std::vector<PairResidual> failures() const {
    std::vector<PairResidual> out;
    for (const auto& p : pairs)
      if (p.residual != 0) out.push_back(p);
    return out;
  }
};

inline bool generators_valid(const CliffordGenerators& g) {
  if (static_cast<int>(g.E.size()) != g.m - 1) return false;
  const IntMatrix id = IntMatrix::Identity(g.l, g.l);
  for (std::size_t i = 0; i < g.E.size(); ++i) {
    const auto& Ei = g.E[i];
    if (Ei.rows() != g.l || Ei.cols() != g.l) return false;
    if (Ei.transpose() != -Ei) return false;
    if (Ei.transpose() * Ei != id) return false;
    for (std::size_t j = i; j < g.E.size(); ++j) {
      IntMatrix ac = Ei * g.E[j] + g.E[j] * Ei;
      IntMatrix expected = i == j ? IntMatrix(-2 * id) : IntMatrix::Zero(g.l, g.l);
      if (ac != expected) return false;
    }
  }
  return true;
}

/// k-fold block-diagonal sum of the irreducible representation on R^{delta(m)}.
inline CliffordGenerators build_generators(int m, int k) {
  if (m < 1) throw DomainError("build_generators requires m >= 1");
  if (k < 1) throw DomainError("build_generators requires k >= 1");
  const int d = delta(m);
  CliffordGenerators g;
  g.m = m;
  g.l = k * d;
  for (const auto& e : detail::irreducible_generators(m)) {
    g.E.push_back(detail::kron(IntMatrix::Identity(k, k), e));
  }
  if (!generators_valid(g)) throw ConstructionError("generated Clifford representation is invalid");
  return g;
}

inline CliffordValidation validate_system(const CliffordSystem& s) {
  CliffordValidation report;
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(s.l);
  const IntMatrix id = IntMatrix::Identity(n, n);
  for (const auto& P : s.P) {
    report.symmetric.push_back(P.rows() == n && P.cols() == n && P == P.transpose());
    report.traces.push_back(P.rows() == n && P.cols() == n ? P.trace() : 0);
  }
  for (std::size_t i = 0; i < s.P.size(); ++i) {
    for (std::size_t j = i; j < s.P.size(); ++j) {
      CliffordValidation::PairResidual r{static_cast<int>(i), static_cast<int>(j), 0};
      if (s.P[i].rows() != n || s.P[j].rows() != n) {
        r.residual = -1;
      } else {
        IntMatrix res = s.P[i] * s.P[j] + s.P[j] * s.P[i];
        if (i == j) res -= 2 * id;
        r.residual = res.array().square().sum();
      }
      report.pairs.push_back(r);
    }
  }
  return report;
}

inline CliffordSystem build_system(const CliffordGenerators& g) {
  if (!generators_valid(g)) throw ConstructionError("build_system: invalid Clifford generators");
  const Eigen::Index l = g.l;
  const IntMatrix id = IntMatrix::Identity(l, l);
  const IntMatrix zero = IntMatrix::Zero(l, l);
  CliffordSystem s;
  s.m = g.m;
  s.l = g.l;
  IntMatrix P0(2 * l, 2 * l), P1(2 * l, 2 * l);
  P0 << id, zero, zero, -id;
  P1 << zero, id, id, zero;
  s.P.push_back(P0);
  s.P.push_back(P1);
  for (const auto& E : g.E) {
    IntMatrix Pi(2 * l, 2 * l);
    Pi << zero, E, -E, zero;
    s.P.push_back(Pi);
  }
  if (!validate_system(s).ok()) throw ConstructionError("assembled Clifford system violates its relations");
  return s;
}

}  // namespace isolab
