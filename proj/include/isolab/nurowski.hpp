#pragma once

// Totally symmetric 3-tensors Y_{ijk} with Y_{ijk} x_i x_j x_k = F (Euclidean
// metric g_{ij} = delta_ij) and the three algebraic conditions
//   (1) Y_{ijk} = Y_{(ijk)}
//   (2) Y_{ijj} = 0
//   (3) Y_{ijk} Y_{lmi} + Y_{lji} Y_{kmi} + Y_{kli} Y_{jmi}
//         = g_{jk} g_{lm} + g_{lj} g_{km} + g_{kl} g_{jm}.
// The left side of (3) is totally symmetric in (j,k,l,m), so only sorted
// tuples j <= k <= l <= m are enumerated.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isolab/errors.hpp"
#include "isolab/polyalg.hpp"

namespace isolab {

class UpsilonTensor {
 public:
  explicit UpsilonTensor(std::size_t n) : n_(n), index_(n * n * n, 0) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) {
          const std::size_t perms[6][3] = {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}};
          for (const auto& q : perms) index_[(q[0] * n + q[1]) * n + q[2]] = next;
          ++next;
        }
    entries_.assign(next, ScalarQ3(0));
  }

  std::size_t dim() const { return n_; }
  std::size_t stored_entries() const { return entries_.size(); }

  const ScalarQ3& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[index_[(i * n_ + j) * n_ + k]];
  }
  ScalarQ3& at(std::size_t i, std::size_t j, std::size_t k) { return entries_[index_[(i * n_ + j) * n_ + k]]; }

  UpsilonTensor scaled(const ScalarQ3& s) const {
    UpsilonTensor out = *this;
    for (auto& e : out.entries_) e *= s;
    return out;
  }

  /// sum_{ijk} Y_{ijk} x_i x_j x_k.
  Poly contract() const {
    Poly F(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        for (std::size_t k = j; k < n_; ++k) {
          const ScalarQ3& y = (*this)(i, j, k);
          if (y.is_zero()) continue;
          const long orderings = (i == j && j == k) ? 1 : (i == j || j == k) ? 3 : 6;
          Monomial m(n_);
          m[i] += 1;
          m[j] += 1;
          m[k] += 1;
          F.add_term(std::move(m), y * ScalarQ3(orderings));
        }
    return F;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> index_;
  std::vector<ScalarQ3> entries_;
};

/// Y_{ijk} = (1/6) d^3 F / dx_i dx_j dx_k, checked by re-contraction.
inline UpsilonTensor extract_upsilon(const Poly& F) {
  const auto bad = F.monomials_not_of_degree(3);
  if (!bad.empty() || F.is_zero()) {
    throw PreconditionError("extract_upsilon requires a nonzero homogeneous cubic");
  }
  const std::size_t n = F.num_vars();
  UpsilonTensor U(n);
  for (const auto& [m, c] : F.terms()) {
    std::vector<std::size_t> idx;
    long factorials = 1;
    for (std::size_t v = 0; v < n; ++v) {
      for (std::uint32_t e = 0; e < m[v]; ++e) idx.push_back(v);
      for (std::uint32_t e = 2; e <= m[v]; ++e) factorials *= e;
    }
    U.at(idx[0], idx[1], idx[2]) = c * ScalarQ3(make_rational(factorials, 6));
  }
  if (!(U.contract() == F)) throw ConstructionError("extract_upsilon: contraction does not reproduce F");
  return U;
}

struct UpsilonConditionReport {
  struct Counterexample {
    std::array<std::size_t, 4> tuple{};
    ScalarQ3 lhs;
    ScalarQ3 rhs;
  };

  std::size_t dim = 0;
  bool symmetric = true;  // condition (1), structural
  bool trace_free = false;
  std::vector<std::size_t> trace_failures;
  bool quadratic_identity = false;
  std::size_t tuples_checked = 0;
  std::size_t tuple_failures = 0;
  std::optional<Counterexample> first_counterexample;

  bool ok() const { return symmetric && trace_free && quadratic_identity; }
};

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, ScalarQ3>>;

inline ScalarQ3 sparse_dot(const SparseRow& a, const SparseRow& b) {
  ScalarQ3 s(0);
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

}  // namespace detail

inline UpsilonConditionReport check_conditions(const UpsilonTensor& U) {
  const std::size_t n = U.dim();
  UpsilonConditionReport r;
  r.dim = n;

  for (std::size_t i = 0; i < n; ++i) {
    ScalarQ3 tr(0);
    for (std::size_t j = 0; j < n; ++j) tr += U(i, j, j);
    if (!tr.is_zero()) r.trace_failures.push_back(i);
  }
  r.trace_free = r.trace_failures.empty();

  // rows[a*n+b] = nonzero entries of Y_{ab.}
  std::vector<detail::SparseRow> rows(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i)
        if (!U(a, b, i).is_zero()) rows[a * n + b].emplace_back(i, U(a, b, i));
  auto S = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return detail::sparse_dot(rows[a * n + b], rows[c * n + d]);
  };
  auto g = [](std::size_t a, std::size_t b) { return a == b ? 1L : 0L; };

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k)
      for (std::size_t l = k; l < n; ++l)
        for (std::size_t m = l; m < n; ++m) {
          ++r.tuples_checked;
          const ScalarQ3 lhs = S(j, k, l, m) + S(l, j, k, m) + S(k, l, j, m);
          const ScalarQ3 rhs(g(j, k) * g(l, m) + g(l, j) * g(k, m) + g(k, l) * g(j, m));
          if (!(lhs == rhs)) {
            ++r.tuple_failures;
            if (!r.first_counterexample) r.first_counterexample = {{j, k, l, m}, lhs, rhs};
          }
        }
  r.quadratic_identity = r.tuple_failures == 0;
  return r;
}

/// Condition (3) traced over j = k, given (2): sum_{j,i} Y_{lji} Y_{jmi} = (n+2)/2 delta_lm.
inline bool trace_relation_holds(const UpsilonTensor& U) {
  const std::size_t n = U.dim();
  const ScalarQ3 half_n2(make_rational(static_cast<long>(n) + 2, 2));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = l; m < n; ++m) {
      ScalarQ3 s(0);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) s += U(l, j, i) * U(j, m, i);
      if (!(s == (l == m ? half_n2 : ScalarQ3(0)))) return false;
    }
  return true;
}

struct NurowskiDimension {
  int k = 0;  // dimension of the division algebra
  int n = 0;  // 3k + 2
  std::string group;
  std::string compact_model;
  std::string source_note;  // non-empty where the source text prints a different reading
};

/// Dimensions n = 3k + 2, k in {1, 2, 4, 8}, with stabilizer and torsion-free model.
inline const std::vector<NurowskiDimension>& dimension_catalog() {
  static const std::vector<NurowskiDimension> rows = {
      {1, 5, "SO(3)", "SU(3)/SO(3)", ""},
      {2, 8, "SU(3)", "SU(3)xSU(3)/SU(3)", "compact model printed as SU(3)/SU(3)/SU(3)"},
      {4, 14, "Sp(3)", "SU(6)/Sp(3)", "dimension list printed as 5,7,13,26"},
      {8, 26, "F4", "E6/F4", "group printed as F_4(3)"},
  };
  return rows;
}

inline std::optional<NurowskiDimension> catalog_entry_for_k(int k) {
  for (const auto& row : dimension_catalog())
    if (row.k == k) return row;
  return std::nullopt;
}

}  // namespace isolab
