#pragma once

/**
 * Numerical geometry of the level hypersurfaces M_t = (F|S^n)^{-1}(t).
 *
 * Conventions (reported alongside every spectrum):
 *  - unit normal xi = +grad_S f / |grad_S f| with grad_S f = grad F - <x, grad F> x;
 *  - shape operator A = -(Hess_S f restricted to T_x M) / |grad_S f|, where
 *    Hess_S f = D^2 F - <x, grad F> Id on T_x S^n;
 *  - principal curvature lambda = cot(theta), theta in (0, pi).
 *
 * Derivatives are exact polynomial derivatives converted to double once.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isolab/errors.hpp"
#include "isolab/families.hpp"
#include "isolab/polyalg.hpp"

namespace isolab {

inline constexpr std::array<int, 5> kMunznerAllowedP = {1, 2, 3, 4, 6};

inline const char* kOrientationConvention =
    "xi = +grad_S f/|grad_S f|; A = -Hess_S f/|grad_S f| on T_xM; lambda = cot(theta), theta in (0,pi)";

/// A family with its value, gradient and Hessian compiled to floating polynomials.
class LevelSetModel {
 public:
  explicit LevelSetModel(IsoparametricFamily fam) : family_(std::move(fam)) {
    const auto n = family_.F.num_vars();
    auto to_num = [](const ScalarQ3& c) { return c.to_double(); };
    value_ = family_.F.map_coefficients(to_num);
    for (std::size_t i = 0; i < n; ++i) {
      Poly di = family_.F.differentiate(i);
      grad_.push_back(di.map_coefficients(to_num));
      for (std::size_t j = 0; j < n; ++j) hess_.push_back(di.differentiate(j).map_coefficients(to_num));
    }
  }

  const IsoparametricFamily& family() const { return family_; }
  int ambient_dim() const { return family_.ambient_dim; }
  int sphere_dim() const { return family_.ambient_dim - 1; }
  int p() const { return family_.p; }

  double value(const Eigen::VectorXd& x) const { return value_.evaluate_numeric(span(x)); }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = grad_[i].evaluate_numeric(span(x));
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) h(i, j) = hess_[i * n + j].evaluate_numeric(span(x));
    return h;
  }

  /// grad F - <grad F, y> y / |y|^2; on the unit sphere this is grad_S f.
  Eigen::VectorXd spherical_gradient(const Eigen::VectorXd& y) const {
    Eigen::VectorXd g = gradient(y);
    return g - (g.dot(y) / y.squaredNorm()) * y;
  }

  /// Smooth extension of the unit normal to a neighbourhood of the sphere.
  Eigen::VectorXd unit_normal(const Eigen::VectorXd& y, int orientation = 1) const {
    Eigen::VectorXd g = spherical_gradient(y);
    const double norm = g.norm();
    if (norm < 1e-6) throw FocalError("spherical gradient vanishes; point is (near) focal, choose another level");
    return (orientation >= 0 ? 1.0 : -1.0) * g / norm;
  }

 private:
  static std::span<const double> span(const Eigen::VectorXd& x) {
    return {x.data(), static_cast<std::size_t>(x.size())};
  }

  IsoparametricFamily family_;
  NumericPoly value_;
  std::vector<NumericPoly> grad_;
  std::vector<NumericPoly> hess_;
};

struct SurfacePoint {
  Eigen::VectorXd x;
  double t = 0.0;
};

struct SamplingOptions {
  double max_abs_level = 0.95;  // guard against focal degeneration
  int max_iterations = 200;
  int max_restarts = 16;
  double tolerance = 1e-13;
};

/**
 * Projected Newton iteration for F(x) = t on the unit sphere from a seeded
 * Gaussian start. Restarts are drawn from the same seeded stream, so the result
 * is a deterministic function of (family, t, seed).
 */
inline SurfacePoint sample_level(const LevelSetModel& model, double t, std::uint64_t seed,
                                 const SamplingOptions& opt = {}) {
  if (!(t > -1.0 && t < 1.0)) throw DomainError("level t must lie in the open interval (-1, 1)");
  if (std::abs(t) > opt.max_abs_level) {
    throw DomainError("level |t| exceeds the sampling guard " + std::to_string(opt.max_abs_level));
  }
  const Eigen::Index n = model.ambient_dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int attempt = 0; attempt < opt.max_restarts; ++attempt) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    x.normalize();
    bool converged = false;
    for (int it = 0; it < opt.max_iterations; ++it) {
      const double r = model.value(x) - t;
      const Eigen::VectorXd g = model.spherical_gradient(x);
      const double g2 = g.squaredNorm();
      if (std::abs(r) <= opt.tolerance && g2 > 1e-12) {
        converged = true;
        break;
      }
      if (g2 < 1e-20) break;
      Eigen::VectorXd step = (r / g2) * g;
      if (step.norm() > 0.25) step *= 0.25 / step.norm();
      x = (x - step).normalized();
    }
    if (!converged) continue;
    if (std::abs(model.value(x) - t) > 1e-12 || model.spherical_gradient(x).norm() < 1e-6) continue;
    return {x, t};
  }
  throw ConvergenceError("sample_level: Newton iteration did not converge; retry with a new seed");
}

struct ShapeOperator {
  Eigen::MatrixXd A;              // symmetrized, in the tangent basis
  Eigen::MatrixXd tangent_basis;  // columns: orthonormal basis of T_x M
  Eigen::VectorXd normal;
  double gradient_norm = 0.0;
  double asymmetry = 0.0;  // max |A - A^T| before symmetrization
};

/// Orthonormal basis of the complement of span{x, xi}.
inline Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd frame(n, 2);
  frame.col(0) = x;
  frame.col(1) = xi;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
  Eigen::MatrixXd Q = qr.householderQ();
  return Q.rightCols(n - 2);
}

inline ShapeOperator shape_operator(const LevelSetModel& model, const SurfacePoint& pt, int orientation = 1) {
  const Eigen::VectorXd& x = pt.x;
  const Eigen::VectorXd grad = model.gradient(x);
  const Eigen::VectorXd g = grad - grad.dot(x) * x;
  const double gnorm = g.norm();
  if (gnorm < 1e-6) throw FocalError("shape_operator: degenerate gradient at a near-focal point; use a different t");
  const double sign = orientation >= 0 ? 1.0 : -1.0;

  ShapeOperator out;
  out.normal = sign * g / gnorm;
  out.gradient_norm = gnorm;
  out.tangent_basis = tangent_basis(x, out.normal);

  Eigen::MatrixXd hess_s = model.hessian(x);
  hess_s.diagonal().array() -= grad.dot(x);
  const Eigen::MatrixXd raw = -sign * out.tangent_basis.transpose() * hess_s * out.tangent_basis / gnorm;
  out.asymmetry = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  out.A = 0.5 * (raw + raw.transpose());
  return out;
}

/// Central differences of the extended unit normal along the tangent basis.
inline Eigen::MatrixXd finite_difference_shape_operator(const LevelSetModel& model, const SurfacePoint& pt,
                                                        const Eigen::MatrixXd& basis, int orientation = 1,
                                                        double h = 1e-5) {
  const Eigen::Index k = basis.cols();
  Eigen::MatrixXd dxi(pt.x.size(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::VectorXd plus = model.unit_normal(pt.x + h * basis.col(i), orientation);
    const Eigen::VectorXd minus = model.unit_normal(pt.x - h * basis.col(i), orientation);
    dxi.col(i) = (plus - minus) / (2 * h);
  }
  Eigen::MatrixXd A = -basis.transpose() * dxi;
  return 0.5 * (A + A.transpose());
}

/// Sorted (ascending) principal curvatures at pt.
inline std::vector<double> principal_curvatures(const LevelSetModel& model, const SurfacePoint& pt,
                                                int orientation = 1) {
  const auto so = shape_operator(model, pt, orientation);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(so.A, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double arccot(double v) { return std::atan2(1.0, v); }

struct Cluster {
  double value = 0.0;
  int multiplicity = 0;
};

/// Clusters are ordered by increasing angle theta_k = arccot(value).
struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Cluster> clusters;
  std::vector<double> thetas;
  int p = 0;
  double max_within_gap = 0.0;
  double min_between_gap = 0.0;

  std::vector<int> multiplicities() const {
    std::vector<int> m;
    for (const auto& c : clusters) m.push_back(c.multiplicity);
    return m;
  }
};

inline constexpr double kDefaultClusterTolerance = 1e-4;
inline constexpr double kClusterGuardRatio = 10.0;

/// Single-linkage clustering with gap threshold tol.
inline Spectrum cluster_spectrum(std::span<const double> eigs, double tol = kDefaultClusterTolerance) {
  if (eigs.empty()) throw DomainError("cluster_spectrum: empty eigenvalue list");
  Spectrum s;
  s.eigenvalues.assign(eigs.begin(), eigs.end());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());

  std::vector<std::vector<double>> groups{{s.eigenvalues.front()}};
  s.min_between_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    const double gap = s.eigenvalues[i] - s.eigenvalues[i - 1];
    if (gap > tol) {
      s.min_between_gap = std::min(s.min_between_gap, gap);
      groups.emplace_back();
    } else {
      s.max_within_gap = std::max(s.max_within_gap, gap);
    }
    groups.back().push_back(s.eigenvalues[i]);
  }
  if (groups.size() > 1) {
    if (s.min_between_gap <= kClusterGuardRatio * tol ||
        s.max_within_gap * kClusterGuardRatio > s.min_between_gap) {
      throw InstabilityError("cluster_spectrum: ambiguous clustering (within-gap " +
                             std::to_string(s.max_within_gap) + ", between-gap " +
                             std::to_string(s.min_between_gap) + ")");
    }
  } else {
    s.min_between_gap = 0.0;
  }

  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    double mean = 0.0;
    for (double v : *it) mean += v;
    mean /= static_cast<double>(it->size());
    s.clusters.push_back({mean, static_cast<int>(it->size())});
    s.thetas.push_back(arccot(mean));
  }
  s.p = static_cast<int>(s.clusters.size());
  return s;
}

struct MunznerReport {
  int p = 0;
  bool p_allowed = false;
  bool spacing_ok = false;
  double max_spacing_error = 0.0;
  bool multiplicities_periodic = false;

  bool ok() const { return p_allowed && spacing_ok && multiplicities_periodic; }
};

inline constexpr double kMunznerSpacingTolerance = 1e-6;

/// theta_k = theta_1 + (k-1) pi / p, m_k = m_{k+2 mod p}, and p in {1,2,3,4,6}.
inline MunznerReport munzner_check(const Spectrum& s, double spacing_tol = kMunznerSpacingTolerance) {
  MunznerReport r;
  r.p = s.p;
  r.p_allowed = std::find(kMunznerAllowedP.begin(), kMunznerAllowedP.end(), s.p) != kMunznerAllowedP.end();
  for (std::size_t k = 1; k < s.thetas.size(); ++k) {
    const double err = std::abs(s.thetas[k] - s.thetas[k - 1] - std::numbers::pi / s.p);
    r.max_spacing_error = std::max(r.max_spacing_error, err);
  }
  r.spacing_ok = r.max_spacing_error <= spacing_tol;
  r.multiplicities_periodic = true;
  const auto p = s.clusters.size();
  for (std::size_t k = 0; k < p; ++k) {
    if (s.clusters[k].multiplicity != s.clusters[(k + 2) % p].multiplicity) r.multiplicities_periodic = false;
  }
  return r;
}

struct ParallelReport {
  double t = 0.0;
  Eigen::VectorXd moved_point;
  double moved_level = 0.0;
  double predicted_level = 0.0;
  std::vector<double> predicted;  // cot(theta_i - t), ascending
  std::vector<double> observed;   // ascending
  double max_curvature_error = 0.0;
  double level_error = 0.0;
  double normal_alignment_error = 0.0;
  bool ok = false;
};

inline constexpr double kParallelTolerance = 1e-6;

/// Moves pt along its normal great circle by angle t and compares the spectrum
/// at x_t with cot(theta_i - t); the normal at x_t is the transported one.
inline ParallelReport parallel_check(const LevelSetModel& model, const SurfacePoint& pt, double t,
                                     double tol = kParallelTolerance) {
  const auto base = shape_operator(model, pt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(base.A, Eigen::EigenvaluesOnly);
  ParallelReport r;
  r.t = t;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double theta = arccot(es.eigenvalues()(i));
    if (std::abs(std::sin(theta - t)) < 1e-6) {
      throw FocalError("parallel_check: cot(t) is a principal curvature; the parallel map collapses");
    }
    r.predicted.push_back(1.0 / std::tan(theta - t));
  }
  std::sort(r.predicted.begin(), r.predicted.end());

  const Eigen::VectorXd& x = pt.x;
  const Eigen::VectorXd& xi = base.normal;
  SurfacePoint moved{std::cos(t) * x + std::sin(t) * xi, 0.0};
  moved.t = model.value(moved.x);
  const Eigen::VectorXd transported = -std::sin(t) * x + std::cos(t) * xi;
  const Eigen::VectorXd g = model.spherical_gradient(moved.x);
  const int orientation = g.dot(transported) >= 0 ? 1 : -1;
  r.normal_alignment_error = (orientation * g.normalized() - transported).norm();

  r.observed = principal_curvatures(model, moved, orientation);
  for (std::size_t i = 0; i < r.observed.size(); ++i) {
    r.max_curvature_error = std::max(r.max_curvature_error, std::abs(r.observed[i] - r.predicted[i]));
  }
  // Along a normal great circle F = cos(p * phi), phi the angle to F^{-1}(1).
  const double phi0 = std::acos(std::clamp(model.value(x), -1.0, 1.0)) / model.p();
  r.moved_point = moved.x;
  r.moved_level = moved.t;
  r.predicted_level = std::cos(model.p() * (phi0 - t));
  r.level_error = std::abs(r.moved_level - r.predicted_level);
  r.ok = r.max_curvature_error <= tol && r.level_error <= 1e-9 && r.normal_alignment_error <= 1e-8;
  return r;
}

struct FocalReport {
  int curvature_index = 0;
  double angle = 0.0;
  std::vector<double> singular_values;  // descending
  int nullity = 0;
  int expected_nullity = 0;
  double step = 0.0;
  bool ok = false;
};

inline constexpr double kFocalSingularThreshold = 1e-5;

/// Jacobian of (y, s) -> cos s y + sin s xi(y) at (pt.x, angle) over the tangent
/// basis of M plus the s direction.
inline Eigen::MatrixXd parallel_map_jacobian(const LevelSetModel& model, const SurfacePoint& pt, double angle,
                                             double h) {
  const auto so = shape_operator(model, pt);
  const Eigen::MatrixXd& B = so.tangent_basis;
  auto phi = [&](const Eigen::VectorXd& y, double s) -> Eigen::VectorXd {
    return std::cos(s) * y + std::sin(s) * model.unit_normal(y);
  };
  Eigen::MatrixXd J(pt.x.size(), B.cols() + 1);
  for (Eigen::Index i = 0; i < B.cols(); ++i) {
    J.col(i) = (phi(pt.x + h * B.col(i), angle) - phi(pt.x - h * B.col(i), angle)) / (2 * h);
  }
  J.col(B.cols()) = (phi(pt.x, angle + h) - phi(pt.x, angle - h)) / (2 * h);
  return J;
}

/// Number of singular values below threshold, retrying smaller/larger steps when
/// a singular value falls in the ambiguous band [threshold, 100 threshold).
inline FocalReport jacobian_nullity(const LevelSetModel& model, const SurfacePoint& pt, double angle,
                                    double threshold = kFocalSingularThreshold) {
  FocalReport r;
  r.angle = angle;
  for (double h : {1e-6, 1e-5, 1e-7, 1e-4}) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(parallel_map_jacobian(model, pt, angle, h));
    const auto& sv = svd.singularValues();
    bool ambiguous = false;
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) < threshold) ++nullity;
      else if (sv(i) < 100 * threshold) ambiguous = true;
    }
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    r.nullity = nullity;
    r.step = h;
    if (!ambiguous) return r;
  }
  throw FocalError("jacobian_nullity: finite differences remain ill-conditioned at every step size");
}

/// Rank collapse of the parallel map at the focal angle theta_k equals m_k.
inline FocalReport focal_check(const LevelSetModel& model, const SurfacePoint& pt, int k,
                               double cluster_tol = kDefaultClusterTolerance) {
  const auto eigs = principal_curvatures(model, pt);
  const Spectrum s = cluster_spectrum(eigs, cluster_tol);
  if (k < 0 || k >= s.p) throw DomainError("focal_check: curvature index out of range");
  FocalReport r = jacobian_nullity(model, pt, s.thetas[k]);
  r.curvature_index = k;
  r.expected_nullity = s.clusters[k].multiplicity;
  r.ok = r.nullity == r.expected_nullity;
  return r;
}

/// Spectra at one point per seed on the level t.
inline std::vector<Spectrum> sample_spectra(const LevelSetModel& model, double t, std::uint64_t first_seed,
                                            int seeds, double cluster_tol = kDefaultClusterTolerance,
                                            const SamplingOptions& opt = {}) {
  std::vector<Spectrum> out;
  for (int i = 0; i < seeds; ++i) {
    const auto pt = sample_level(model, t, first_seed + static_cast<std::uint64_t>(i), opt);
    const auto eigs = principal_curvatures(model, pt);
    out.push_back(cluster_spectrum(eigs, cluster_tol));
  }
  return out;
}

/// Largest deviation of any sorted eigenvalue from the first spectrum.
inline double spectrum_spread(const std::vector<Spectrum>& spectra) {
  double spread = 0.0;
  for (const auto& s : spectra) {
    if (s.eigenvalues.size() != spectra.front().eigenvalues.size()) return std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      spread = std::max(spread, std::abs(s.eigenvalues[i] - spectra.front().eigenvalues[i]));
    }
  }
  return spread;
}

}  // namespace isolab
