#pragma once

// Tabulated data: homogeneous isoparametric hypersurfaces from rank-2
// symmetric spaces, FKM multiplicities (m, k delta(m) - m - 1), the FKM
// inhomogeneity predicate, and the principal orbit of SU(3)/SO(3).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "isolab/clifford.hpp"
#include "isolab/errors.hpp"
#include "isolab/polyalg.hpp"

namespace isolab {

/// a + b n, for table rows parametrized by n.
struct AffineInt {
  int constant = 0;
  int slope = 0;
  int at(int n) const { return constant + slope * n; }
};

struct SymmetricSpaceRow {
  std::string g;
  std::string h;
  int p = 0;
  AffineInt dim_M;
  AffineInt m1;  // m_1 = m_3 = ...
  AffineInt m2;  // m_2 = m_4 = ...
  std::optional<int> n_min;  // set for rows parametrized by n
  std::string multiplicities;  // as printed
  bool flagged = false;
  std::string flag_note;

  bool parametric() const { return n_min.has_value(); }
  std::string label() const { return g + "/" + h; }
};

struct Rank2RowCheck {
  std::string label;
  bool consistent = true;
  bool exempt = false;
  // For an inconsistent row: parameter value of the first failure and the
  // equal multiplicity that dim_M would require (when p divides it).
  std::optional<int> failing_n;
  int printed_dim = 0;
  int implied_dim = 0;
  std::optional<int> required_equal_multiplicity;
};

/// Rank-2 compact symmetric spaces G/H and the multiplicities of their principal orbits.
inline const std::vector<SymmetricSpaceRow>& rank2_table() {
  static const std::vector<SymmetricSpaceRow> rows = {
      {"su(3)", "so(3)", 3, {3, 0}, {1, 0}, {1, 0}, std::nullopt, "m_i=1", false, ""},
      {"su(3)+su(3)", "su(3)", 3, {6, 0}, {2, 0}, {2, 0}, std::nullopt, "m_i=2", false, ""},
      {"su(6)", "sp(3)", 3, {12, 0}, {3, 0}, {3, 0}, std::nullopt, "m_i=3", false, ""},
      {"e6", "f4", 3, {24, 0}, {3, 0}, {3, 0}, std::nullopt, "m_i=3", true,
       "printed m_i=3; the 26-dimensional Upsilon case requires multiplicity 8"},
      {"so(n+2)", "so(n)+so(2)", 4, {-2, 2}, {1, 0}, {-2, 1}, 3, "m1=m3=1; m2=m4=n-2", false, ""},
      {"su(n+2)", "su(n)+su(2)", 4, {-2, 4}, {2, 0}, {-3, 2}, 2, "m1=m3=2; m2=m4=2n-3", false, ""},
      {"sp(n+2)", "sp(n)+sp(2)", 4, {-2, 8}, {4, 0}, {-5, 4}, 2, "m1=m3=4; m2=m4=4n-5", false, ""},
      {"so(5)+so(5)", "so(5)", 4, {8, 0}, {2, 0}, {2, 0}, std::nullopt, "m_i=2", false, ""},
      {"so(10)", "u(5)", 4, {18, 0}, {4, 0}, {5, 0}, std::nullopt, "m1=m3=4; m2=m4=5", false, ""},
      {"e6", "so(10)+R", 4, {30, 0}, {6, 0}, {9, 0}, std::nullopt, "m1=m3=6; m2=m4=9", false, ""},
      {"g2", "so(4)", 6, {6, 0}, {1, 0}, {1, 0}, std::nullopt, "m_i=1", false, ""},
      {"g2+g2", "g2", 6, {12, 0}, {2, 0}, {2, 0}, std::nullopt, "m_i=2", false, ""},
  };
  return rows;
}

/// Checks dim_M = p (m1 + m2) / 2; parametric rows are checked for n_min..n_min+span.
inline Rank2RowCheck check_rank2_row(const SymmetricSpaceRow& row, int span = 32) {
  Rank2RowCheck c;
  c.label = row.label();
  c.exempt = row.flagged;
  const int first = row.n_min.value_or(0);
  const int last = row.parametric() ? first + span : first;
  for (int n = first; n <= last; ++n) {
    const int printed = row.dim_M.at(n);
    const int implied = row.p * (row.m1.at(n) + row.m2.at(n));
    if (2 * printed != implied) {
      c.consistent = false;
      if (row.parametric()) c.failing_n = n;
      c.printed_dim = printed;
      c.implied_dim = implied / 2;
      if (printed % row.p == 0) c.required_equal_multiplicity = printed / row.p;
      break;
    }
    c.printed_dim = printed;
    c.implied_dim = implied / 2;
  }
  return c;
}

inline std::vector<Rank2RowCheck> check_rank2_table(int span = 32) {
  std::vector<Rank2RowCheck> out;
  for (const auto& row : rank2_table()) out.push_back(check_rank2_row(row, span));
  return out;
}

/// Homogeneous (m1, m2) pairs with p = 4, unordered, for parameters up to n_max.
inline std::vector<std::pair<int, int>> homogeneous_quartic_pairs(int n_max) {
  std::vector<std::pair<int, int>> out;
  for (const auto& row : rank2_table()) {
    if (row.p != 4) continue;
    const int first = row.n_min.value_or(0);
    const int last = row.parametric() ? std::max(first, n_max) : first;
    for (int n = first; n <= last; ++n) {
      const int a = row.m1.at(n), b = row.m2.at(n);
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct FKMEntry {
  int m = 0;
  int k = 0;
  int delta_m = 0;
  std::optional<std::pair<int, int>> pair;  // empty when m2 <= 0
};

/// FKM multiplicities (m, k delta(m) - m - 1) for 1 <= k <= max_k, 1 <= m <= max_m.
inline std::vector<FKMEntry> fkm_table(int max_k, int max_m) {
  if (max_k < 1 || max_m < 1) throw DomainError("fkm_table requires max_k >= 1 and max_m >= 1");
  std::vector<FKMEntry> out;
  for (int k = 1; k <= max_k; ++k) {
    for (int m = 1; m <= max_m; ++m) {
      FKMEntry e{m, k, delta(m), std::nullopt};
      const int m2 = k * e.delta_m - m - 1;
      if (m2 > 0) e.pair = std::make_pair(m, m2);
      out.push_back(e);
    }
  }
  return out;
}

/// One cell of the printed low-dimensional FKM table.
struct PrintedFKMCell {
  int m = 0;
  int k = 0;
  bool dash = false;
  bool illegible = false;  // printed as "(.)"
  std::pair<int, int> pair{0, 0};
};

/// The printed table, rows k = 1..5, columns m = 1..9, transcribed cell by cell.
inline const std::vector<PrintedFKMCell>& printed_fkm_table() {
  static const std::vector<PrintedFKMCell> cells = [] {
    using P = std::pair<int, int>;
    constexpr P dash{0, 0};
    constexpr P dot{-1, -1};
    const std::array<std::array<P, 9>, 5> rows = {{
        {dash, dash, dash, dash, P{5, 2}, P{6, 1}, dash, dash, P{9, 6}},
        {dash, P{2, 1}, P{3, 4}, P{4, 3}, P{5, 10}, P{6, 9}, P{7, 8}, P{8, 7}, P{9, 22}},
        {P{1, 1}, P{2, 3}, P{3, 8}, P{4, 7}, P{5, 18}, P{6, 17}, P{7, 16}, P{8, 15}, P{9, 38}},
        {P{1, 2}, P{2, 5}, P{3, 12}, P{4, 11}, P{5, 26}, P{6, 25}, P{7, 24}, P{8, 23}, P{9, 54}},
        {P{1, 3}, P{2, 7}, P{3, 16}, P{4, 17}, P{5, 34}, P{6, 33}, P{7, 32}, P{8, 31}, dot},
    }};
    std::vector<PrintedFKMCell> out;
    for (int k = 1; k <= 5; ++k) {
      for (int m = 1; m <= 9; ++m) {
        const P cell = rows[k - 1][m - 1];
        out.push_back({m, k, cell == dash, cell == dot, cell});
      }
    }
    return out;
  }();
  return cells;
}

struct FKMTableMismatch {
  int m = 0;
  int k = 0;
  std::string printed;
  std::string computed;
};

inline std::string pair_text(const std::optional<std::pair<int, int>>& p) {
  if (!p) return "-";
  return "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")";
}

/// Compares the formula against every legible printed cell.
inline std::vector<FKMTableMismatch> compare_with_printed_fkm_table() {
  std::vector<FKMTableMismatch> out;
  const auto generated = fkm_table(5, 9);
  for (const auto& cell : printed_fkm_table()) {
    if (cell.illegible) continue;
    const auto it = std::find_if(generated.begin(), generated.end(),
                                 [&](const FKMEntry& e) { return e.m == cell.m && e.k == cell.k; });
    const std::optional<std::pair<int, int>> printed =
        cell.dash ? std::nullopt : std::optional<std::pair<int, int>>(cell.pair);
    if (it->pair != printed) out.push_back({cell.m, cell.k, pair_text(printed), pair_text(it->pair)});
  }
  return out;
}

enum class InhomogeneityVerdict { inhomogeneous, inconclusive };

inline std::string to_string(InhomogeneityVerdict v) {
  return v == InhomogeneityVerdict::inhomogeneous ? "inhomogeneous" : "inconclusive";
}

struct InhomogeneityResult {
  InhomogeneityVerdict verdict = InhomogeneityVerdict::inconclusive;
  bool inequality_holds = false;   // 3 <= 3 m1 <= m2 + 9
  bool side_condition_ok = true;   // for m = 4: P_0 P_1 P_2 P_3 != +-Id
  bool caution = false;            // (m1, m2) is also realized by a homogeneous quartic
  std::string note;
};

/**
 * Sufficient condition for an FKM family to be inhomogeneous. The criterion
 * is one-directional, so failure yields "inconclusive" rather than "homogeneous".
 * `degenerate` reports that P_0 P_1 P_2 P_3 = +-Id; it only matters for m = 4.
 */
inline InhomogeneityResult inhomogeneity_predicate(int m1, int m2, int m, bool degenerate) {
  if (m1 < 1 || m2 < 1) throw PreconditionError("inhomogeneity_predicate requires positive multiplicities");
  InhomogeneityResult r;
  r.inequality_holds = 3 <= 3 * m1 && 3 * m1 <= m2 + 9;
  r.side_condition_ok = !(m == 4 && degenerate);
  r.verdict = r.inequality_holds && r.side_condition_ok ? InhomogeneityVerdict::inhomogeneous
                                                        : InhomogeneityVerdict::inconclusive;
  const auto homogeneous = homogeneous_quartic_pairs(std::max(m1, m2) + 4);
  const std::pair<int, int> key{std::min(m1, m2), std::max(m1, m2)};
  r.caution = std::binary_search(homogeneous.begin(), homogeneous.end(), key);
  if (!r.inequality_holds) {
    r.note = "3 <= 3m1 <= m2 + 9 fails: 3m1 = " + std::to_string(3 * m1) + ", m2 + 9 = " + std::to_string(m2 + 9);
  } else if (!r.side_condition_ok) {
    r.note = "m = 4 with P0 P1 P2 P3 = +-Id";
  } else {
    r.note = "3 <= " + std::to_string(3 * m1) + " <= " + std::to_string(m2 + 9);
  }
  if (r.caution) r.note += "; multiplicities also occur for a homogeneous quartic";
  return r;
}

// --- SU(3)/SO(3) -----------------------------------------------------------
//
// p = i Sym_0(3). For X in so(3) and x = iS, [X, x] = i[X, S], so the whole
// computation runs on the real symmetric parts. The invariant inner product is
// <iS, iT> = 6 tr(ST), i.e. minus the Killing form of su(3); it makes
// xi = (1/6) diag(i, i, -2i) a unit vector.

using Matrix3Q = std::array<std::array<ScalarQ3, 3>, 3>;

namespace detail {

inline Matrix3Q zero3() {
  Matrix3Q z;
  for (auto& row : z) row.fill(ScalarQ3(0));
  return z;
}

inline Matrix3Q diag3(const ScalarQ3& a, const ScalarQ3& b, const ScalarQ3& c) {
  Matrix3Q d = zero3();
  d[0][0] = a;
  d[1][1] = b;
  d[2][2] = c;
  return d;
}

inline Matrix3Q mul3(const Matrix3Q& a, const Matrix3Q& b) {
  Matrix3Q out = zero3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Matrix3Q bracket3(const Matrix3Q& a, const Matrix3Q& b) {
  Matrix3Q ab = mul3(a, b), ba = mul3(b, a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ab[i][j] -= ba[i][j];
  return ab;
}

inline ScalarQ3 trace_product(const Matrix3Q& a, const Matrix3Q& b) {
  ScalarQ3 s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += a[i][j] * b[j][i];
  return s;
}

/// E_ab - E_ba, for (a, b) in {(0,1), (0,2), (1,2)}.
inline std::array<Matrix3Q, 3> so3_basis() {
  std::array<Matrix3Q, 3> out;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int q = 0; q < 3; ++q) {
    out[q] = zero3();
    out[q][pairs[q][0]][pairs[q][1]] = ScalarQ3(1);
    out[q][pairs[q][1]][pairs[q][0]] = ScalarQ3(-1);
  }
  return out;
}

}  // namespace detail

/**
 * Matrix of A on T_x M = [so(3), x] in the basis v_q = [K_q, S_x], from
 * A v_q = -[K_q, S_xi]. Throws if x is not regular or the image leaves the span.
 */
inline Matrix3Q orbit_shape_operator(const Matrix3Q& S_x, const Matrix3Q& S_xi) {
  const auto K = detail::so3_basis();
  std::array<Matrix3Q, 3> v, w;
  for (int q = 0; q < 3; ++q) {
    v[q] = detail::bracket3(K[q], S_x);
    w[q] = detail::bracket3(K[q], S_xi);
    for (auto& row : w[q])
      for (auto& e : row) e = -e;
  }
  std::array<ScalarQ3, 3> gram;
  for (int q = 0; q < 3; ++q) {
    gram[q] = detail::trace_product(v[q], v[q]);
    if (gram[q].is_zero()) throw DomainError("orbit_shape_operator: x is not a regular element");
  }
  Matrix3Q A = detail::zero3();
  for (int q = 0; q < 3; ++q) {
    // Supports of v_0, v_1, v_2 are disjoint, so the coordinates are projections.
    Matrix3Q residual = w[q];
    for (int r = 0; r < 3; ++r) {
      A[r][q] = detail::trace_product(w[q], v[r]) * gram[r].inverse();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) residual[i][j] -= A[r][q] * v[r][i][j];
    }
    for (const auto& row : residual)
      for (const auto& e : row)
        if (!e.is_zero()) throw ConstructionError("orbit_shape_operator: -[X, xi] leaves T_x M");
  }
  return A;
}

struct OrbitNormalization {
  std::string name;
  std::string description;
  std::optional<ScalarQ3> lambda_exact;  // positive eigenvalue when it lies in Q(sqrt3)
  std::vector<double> eigenvalues;       // descending
  std::vector<double> thetas;            // arccot of eigenvalues, ascending
  double max_spacing_error = 0.0;        // max |theta_{k+1} - theta_k - pi/3|
};

struct Su3OrbitReport {
  std::vector<OrbitNormalization> normalizations;  // raw, unit, printed
  bool symmetric_with_zero = false;  // characteristic polynomial is t^3 - lambda^2 t
  ScalarQ3 lambda_squared;           // of the unit normalization
  double unit_to_printed_ratio = 0.0;
  std::string caveat;
};

namespace detail {

inline OrbitNormalization summarize_orbit(std::string name, std::string description,
                                          std::optional<ScalarQ3> lambda_exact, std::vector<double> eigs) {
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  OrbitNormalization o{std::move(name), std::move(description), std::move(lambda_exact), eigs, {}, 0.0};
  for (double e : eigs) o.thetas.push_back(std::atan2(1.0, e));
  for (std::size_t i = 0; i + 1 < o.thetas.size(); ++i)
    o.max_spacing_error = std::max(o.max_spacing_error,
                                   std::abs(o.thetas[i + 1] - o.thetas[i] - std::numbers::pi / 3));
  return o;
}

struct OrbitSpectrum {
  ScalarQ3 trace, second, det;
  std::optional<ScalarQ3> lambda;
  std::vector<double> numeric;
};

inline OrbitSpectrum orbit_spectrum(const Matrix3Q& A) {
  OrbitSpectrum s;
  s.trace = A[0][0] + A[1][1] + A[2][2];
  s.second = A[0][0] * A[1][1] - A[0][1] * A[1][0] + A[0][0] * A[2][2] - A[0][2] * A[2][0] +
             A[1][1] * A[2][2] - A[1][2] * A[2][1];
  s.det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
          A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  const ScalarQ3 lambda_sq = -s.second;
  if (lambda_sq.is_rational()) {
    if (auto root = exact_sqrt(lambda_sq.rational_part())) s.lambda = *root;
  }
  Eigen::Matrix3d M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = A[i][j].to_double();
  const Eigen::EigenSolver<Eigen::Matrix3d> es(M);
  for (int i = 0; i < 3; ++i) s.numeric.push_back(es.eigenvalues()(i).real());
  return s;
}

}  // namespace detail

inline Su3OrbitReport su3_orbit_spectrum() {
  const ScalarQ3 sixth(make_rational(1, 6));
  const Matrix3Q S_xi = detail::diag3(sixth, sixth, ScalarQ3(make_rational(-2, 6)));

  // x in the Cartan subalgebra orthogonal to xi: S_x proportional to diag(1, -1, 0).
  const Matrix3Q S_x_raw = detail::diag3(ScalarQ3(1), ScalarQ3(-1), ScalarQ3(0));
  const ScalarQ3 unit_scale{Rational(0), make_rational(1, 6)};  // 6 * 2 * (sqrt3/6)^2 = 1
  const Matrix3Q S_x_unit = detail::diag3(unit_scale, -unit_scale, ScalarQ3(0));

  Su3OrbitReport rep;
  const auto raw = detail::orbit_spectrum(orbit_shape_operator(S_x_raw, S_xi));
  const auto unit = detail::orbit_spectrum(orbit_shape_operator(S_x_unit, S_xi));
  rep.lambda_squared = -unit.second;
  rep.symmetric_with_zero = unit.trace.is_zero() && unit.det.is_zero() && raw.trace.is_zero() &&
                            raw.det.is_zero() && unit.lambda.has_value() &&
                            unit.lambda->to_double() > 0.0;

  rep.normalizations.push_back(detail::summarize_orbit(
      "raw", "x = i diag(1,-1,0), xi = (1/6) diag(i,i,-2i), unnormalized x", raw.lambda, raw.numeric));
  rep.normalizations.push_back(detail::summarize_orbit(
      "unit", "x and xi unit vectors for <X,Y> = -6 tr(XY)", unit.lambda, unit.numeric));
  const double printed = 1.0 / std::sqrt(3.0);
  rep.normalizations.push_back(detail::summarize_orbit(
      "printed", "values +-1/sqrt3 and 0 as stated for this orbit", ScalarQ3{Rational(0), make_rational(1, 3)},
      {printed, 0.0, -printed}));
  rep.unit_to_printed_ratio = printed / unit.lambda.value_or(ScalarQ3(1)).to_double();
  rep.caveat =
      "the stated values +-1/sqrt3 are not pi/3-spaced in cot-angle; on the unit sphere a p=3 family "
      "through the middle level has curvatures +-sqrt3 and 0, so the stated values correspond to a "
      "metric scaled by a factor 3 relative to unit normalization";
  return rep;
}

}  // namespace isolab
