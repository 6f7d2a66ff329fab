#pragma once

// JSON serialization of verification results. Every identity carries a short
// citation so a report can be read without the source code at hand.

#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/catalog.hpp"
#include "isolab/clifford.hpp"
#include "isolab/cm_verifier.hpp"
#include "isolab/families.hpp"
#include "isolab/nurowski.hpp"
#include "isolab/spectral.hpp"

namespace isolab::report {

using nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "isolab-report/1";

namespace cite {
inline constexpr const char* kGradient = "Cartan-Muenzner: |grad F|^2 = p^2 r^(2p-2) (Muenzner, Math. Ann. 251, 1980)";
inline constexpr const char* kLaplacian = "Cartan-Muenzner: Delta F = p^2 (m2 - m1)/2 r^(p-2)";
inline constexpr const char* kEuler = "Euler: sum_i x_i dF/dx_i = p F for homogeneous F of degree p";
inline constexpr const char* kMunzner = "Muenzner: p in {1,2,3,4,6}, theta_k = theta_1 + (k-1) pi/p, m_k = m_(k+2)";
inline constexpr const char* kParallel = "parallel hypersurfaces: cot(theta_k - t)";
inline constexpr const char* kFocal = "focal submanifold at theta_k has codimension m_k + 1";
inline constexpr const char* kClifford = "Clifford system: P_i symmetric, P_i P_j + P_j P_i = 2 delta_ij Id";
inline constexpr const char* kFkm = "Ferus-Karcher-Muenzner: (m1, m2) = (m, k delta(m) - m - 1) (Math. Z. 177, 1981)";
inline constexpr const char* kUpsilon =
    "Nurowski: Y_(ijk) symmetric, trace-free, Y_ijk Y_lmi + Y_lji Y_kmi + Y_kli Y_jmi = g_jk g_lm + g_lj g_km + "
    "g_kl g_jm (J. Geom. Phys. 58, 2008)";
inline constexpr const char* kRank2 = "dim M = p (m1 + m2) / 2 for principal orbits of rank-2 symmetric spaces";
inline constexpr const char* kInhomogeneity =
    "FKM families with 3 <= 3 m1 <= m2 + 9 (and P0 P1 P2 P3 != +-Id when m = 4) are inhomogeneous";
inline constexpr const char* kOrbit = "SU(3)/SO(3) principal orbit: A [X, x] = -[X, xi]";
}  // namespace cite

inline ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

inline ordered_json check(bool ok, const char* citation) {
  return ordered_json{{"ok", ok}, {"citation", citation}};
}

inline ordered_json residual_summary(const Poly& r, std::size_t max_terms = 8) {
  ordered_json j;
  j["zero"] = r.is_zero();
  j["terms"] = r.terms().size();
  if (!r.is_zero()) {
    Poly head(r.num_vars());
    std::size_t taken = 0;
    for (const auto& [m, c] : r.terms()) {
      if (taken++ == max_terms) break;
      head.add_term(m, c);
    }
    j["leading_terms"] = to_text(head);
  }
  return j;
}

inline ordered_json to_json(const IsoparametricFamily& fam) {
  ordered_json j;
  j["name"] = fam.name;
  j["p"] = fam.p;
  j["ambient_dim"] = fam.ambient_dim;
  j["sphere_dim"] = fam.sphere_dim();
  if (fam.expected_multiplicities) {
    j["multiplicities"] = {fam.expected_multiplicities->first, fam.expected_multiplicities->second};
  } else {
    j["multiplicities"] = nullptr;
  }
  j["terms"] = fam.F.terms().size();
  j["provenance"] = fam.provenance;
  return j;
}

inline ordered_json to_json(const CMReport& r) {
  ordered_json j;
  j["p"] = r.p;
  j["euler_ok"] = r.euler_ok;
  j["grad_identity_ok"] = r.grad_identity_ok;
  j["laplace_identity_ok"] = r.laplace_identity_ok;
  j["inferred_c"] = r.inferred_c.to_string();
  j["inferred_m_diff"] = r.inferred_m_diff ? ordered_json(r.inferred_m_diff->get_str()) : ordered_json(nullptr);
  j["grad_residual"] = residual_summary(r.grad_residual);
  j["laplace_residual"] = residual_summary(r.laplace_residual);
  if (r.multiplicities_match) j["multiplicities_match"] = *r.multiplicities_match;
  j["checks"] = {{"euler", check(r.euler_ok, cite::kEuler)},
                 {"gradient", check(r.grad_identity_ok, cite::kGradient)},
                 {"laplacian", check(r.laplace_identity_ok, cite::kLaplacian)}};
  j["ok"] = r.ok();
  return j;
}

inline ordered_json to_json(const Spectrum& s) {
  ordered_json j;
  j["p"] = s.p;
  j["eigenvalues"] = s.eigenvalues;
  ordered_json clusters = ordered_json::array();
  for (const auto& c : s.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
  j["clusters"] = clusters;
  j["thetas"] = s.thetas;
  j["multiplicities"] = s.multiplicities();
  j["max_within_gap"] = s.max_within_gap;
  j["min_between_gap"] = s.min_between_gap;
  return j;
}

inline ordered_json to_json(const MunznerReport& r) {
  return {{"p", r.p},
          {"p_allowed", r.p_allowed},
          {"spacing_ok", r.spacing_ok},
          {"max_spacing_error", r.max_spacing_error},
          {"multiplicities_periodic", r.multiplicities_periodic},
          {"ok", r.ok()},
          {"citation", cite::kMunzner}};
}

inline ordered_json to_json(const ParallelReport& r) {
  return {{"t", r.t},
          {"moved_level", r.moved_level},
          {"predicted_level", r.predicted_level},
          {"level_error", r.level_error},
          {"normal_alignment_error", r.normal_alignment_error},
          {"predicted", r.predicted},
          {"observed", r.observed},
          {"max_curvature_error", r.max_curvature_error},
          {"ok", r.ok},
          {"citation", cite::kParallel}};
}

inline ordered_json to_json(const FocalReport& r) {
  return {{"curvature_index", r.curvature_index},
          {"angle", r.angle},
          {"nullity", r.nullity},
          {"expected_nullity", r.expected_nullity},
          {"finite_difference_step", r.step},
          {"singular_values", r.singular_values},
          {"ok", r.ok},
          {"citation", cite::kFocal}};
}

inline ordered_json to_json(const CliffordValidation& v) {
  ordered_json failures = ordered_json::array();
  for (const auto& f : v.failures()) failures.push_back({{"i", f.i}, {"j", f.j}, {"residual", f.residual}});
  return {{"ok", v.ok()},
          {"symmetric", v.symmetric},
          {"traces", v.traces},
          {"pairs_checked", v.pairs.size()},
          {"failures", failures},
          {"citation", cite::kClifford}};
}

inline ordered_json to_json(const UpsilonConditionReport& r) {
  ordered_json j;
  j["dim"] = r.dim;
  j["symmetric"] = r.symmetric;
  j["trace_free"] = r.trace_free;
  j["trace_failures"] = r.trace_failures;
  j["quadratic_identity"] = r.quadratic_identity;
  j["tuples_checked"] = r.tuples_checked;
  j["tuple_failures"] = r.tuple_failures;
  if (r.first_counterexample) {
    const auto& c = *r.first_counterexample;
    j["first_counterexample"] = {{"jklm", c.tuple}, {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}};
  }
  j["ok"] = r.ok();
  j["citation"] = cite::kUpsilon;
  return j;
}

inline ordered_json to_json(const SymmetricSpaceRow& row, const Rank2RowCheck& c) {
  ordered_json j;
  j["g"] = row.g;
  j["h"] = row.h;
  j["p"] = row.p;
  if (row.parametric()) {
    j["dim_M"] = std::to_string(row.dim_M.slope) + "n" + (row.dim_M.constant < 0 ? "" : "+") +
                 std::to_string(row.dim_M.constant);
    j["n_min"] = *row.n_min;
  } else {
    j["dim_M"] = row.dim_M.constant;
  }
  j["multiplicities"] = row.multiplicities;
  j["consistent"] = c.consistent;
  j["flagged"] = row.flagged;
  if (row.flagged) j["flag_note"] = row.flag_note;
  if (!c.consistent) {
    j["implied_dim"] = c.implied_dim;
    if (c.required_equal_multiplicity) j["required_equal_multiplicity"] = *c.required_equal_multiplicity;
  }
  return j;
}

inline ordered_json to_json(const FKMEntry& e) {
  ordered_json j{{"m", e.m}, {"k", e.k}, {"delta_m", e.delta_m}};
  j["pair"] = e.pair ? ordered_json{e.pair->first, e.pair->second} : ordered_json(nullptr);
  return j;
}

inline ordered_json to_json(const InhomogeneityResult& r) {
  return {{"verdict", to_string(r.verdict)},
          {"inequality_holds", r.inequality_holds},
          {"side_condition_ok", r.side_condition_ok},
          {"caution", r.caution},
          {"note", r.note},
          {"citation", cite::kInhomogeneity}};
}

inline ordered_json to_json(const Su3OrbitReport& r) {
  ordered_json norms = ordered_json::array();
  for (const auto& n : r.normalizations) {
    norms.push_back({{"name", n.name},
                     {"description", n.description},
                     {"lambda_exact", n.lambda_exact ? ordered_json(n.lambda_exact->to_string()) : ordered_json(nullptr)},
                     {"eigenvalues", n.eigenvalues},
                     {"thetas", n.thetas},
                     {"max_spacing_error", n.max_spacing_error}});
  }
  return {{"symmetric_with_zero", r.symmetric_with_zero},
          {"lambda_squared_unit", r.lambda_squared.to_string()},
          {"printed_over_unit", r.unit_to_printed_ratio},
          {"normalizations", norms},
          {"caveat", r.caveat},
          {"citation", cite::kOrbit}};
}

}  // namespace isolab::report
