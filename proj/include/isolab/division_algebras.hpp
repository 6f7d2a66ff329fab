#pragma once

// The normed division algebras R, C, H, O with basis e_0 = 1, e_1, ..., e_{d-1}.
// H uses the quaternion table i*j = k; O is the Cayley-Dickson double of H,
// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "isolab/errors.hpp"

namespace isolab {

enum class AlgebraTag { R, C, H, O };

constexpr int algebra_dim(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::R: return 1;
    case AlgebraTag::C: return 2;
    case AlgebraTag::H: return 4;
    case AlgebraTag::O: return 8;
  }
  return 0;
}

inline std::string algebra_name(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::R: return "R";
    case AlgebraTag::C: return "C";
    case AlgebraTag::H: return "H";
    case AlgebraTag::O: return "O";
  }
  return "?";
}

inline AlgebraTag parse_algebra(const std::string& s) {
  if (s == "R") return AlgebraTag::R;
  if (s == "C") return AlgebraTag::C;
  if (s == "H") return AlgebraTag::H;
  if (s == "O") return AlgebraTag::O;
  throw DomainError("unknown algebra '" + s + "' (expected R, C, H or O)");
}

/// e_i * e_j = sign * e_index.
struct BasisProduct {
  int index = 0;
  int sign = 0;
};

/// Dense rank-3 tensor c_{ijk} with e_i e_j = sum_k c_{ijk} e_k, entries in {-1,0,1}.
class StructureConstants {
 public:
  StructureConstants(AlgebraTag tag, std::vector<BasisProduct> table)
      : tag_(tag), dim_(algebra_dim(tag)), table_(std::move(table)) {}

  AlgebraTag tag() const { return tag_; }
  int dim() const { return dim_; }

  const BasisProduct& product(int i, int j) const { return table_[i * dim_ + j]; }

  int operator()(int i, int j, int k) const {
    const auto& bp = product(i, j);
    return bp.index == k ? bp.sign : 0;
  }

 private:
  AlgebraTag tag_;
  int dim_;
  std::vector<BasisProduct> table_;
};

namespace detail {

inline std::vector<BasisProduct> quaternion_table() {
  // rows: e_i * e_j for basis (1, i, j, k)
  static constexpr int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<BasisProduct> t(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i * 4 + j] = {idx[i][j], sgn[i][j]};
  return t;
}

/// Cayley-Dickson doubling of a d-dimensional table: e_i = (e_i, 0), e_{d+i} = (0, e_i).
inline std::vector<BasisProduct> cayley_dickson_double(const std::vector<BasisProduct>& base, int d) {
  auto mul = [&](int i, int j) { return base[i * d + j]; };
  auto conj_sign = [](int i) { return i == 0 ? 1 : -1; };
  const int n = 2 * d;
  std::vector<BasisProduct> t(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool ib = i >= d, jb = j >= d;
      const int a = i % d, c = j % d;
      BasisProduct r;
      if (!ib && !jb) {
        r = mul(a, c);  // (a,0)(c,0) = (ac, 0)
      } else if (!ib && jb) {
        auto p = mul(c, a);  // (a,0)(0,d) = (0, d a)
        r = {p.index + d, p.sign};
      } else if (ib && !jb) {
        auto p = mul(a, c);  // (0,b)(c,0) = (0, b conj(c))
        r = {p.index + d, p.sign * conj_sign(c)};
      } else {
        auto p = mul(c, a);  // (0,b)(0,d) = (-conj(d) b, 0)
        r = {p.index, -p.sign * conj_sign(c)};
      }
      t[i * n + j] = r;
    }
  }
  return t;
}

}  // namespace detail

inline const StructureConstants& structure_constants(AlgebraTag tag) {
  static const std::array<StructureConstants, 4> tables = [] {
    std::vector<BasisProduct> r = {{0, 1}};
    std::vector<BasisProduct> c = detail::cayley_dickson_double(r, 1);
    std::vector<BasisProduct> h = detail::quaternion_table();
    std::vector<BasisProduct> o = detail::cayley_dickson_double(h, 4);
    return std::array<StructureConstants, 4>{
        StructureConstants(AlgebraTag::R, r), StructureConstants(AlgebraTag::C, c),
        StructureConstants(AlgebraTag::H, h), StructureConstants(AlgebraTag::O, o)};
  }();
  return tables[static_cast<int>(tag)];
}

/**
 * Element of a division algebra with coefficients of type T.
 *
 * T only needs ring operations, so the same code multiplies exact rationals,
 * doubles, or polynomials (the latter is how the Cartan cubics are expanded).
 */
template <class T>
class AlgElem {
 public:
  AlgElem(AlgebraTag tag, std::vector<T> coeffs) : tag_(tag), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != algebra_dim(tag)) {
      throw StructuralError("coefficient count does not match algebra dimension");
    }
  }

  static AlgElem zero(AlgebraTag tag, const T& zero_value) {
    return AlgElem(tag, std::vector<T>(algebra_dim(tag), zero_value));
  }

  static AlgElem basis(AlgebraTag tag, int i, const T& zero_value, const T& one_value) {
    auto e = zero(tag, zero_value);
    e.coeffs_.at(i) = one_value;
    return e;
  }

  AlgebraTag tag() const { return tag_; }
  int dim() const { return algebra_dim(tag_); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](int i) const { return coeffs_[i]; }

  const T& re() const { return coeffs_[0]; }

  AlgElem conj() const {
    AlgElem out = *this;
    for (int i = 1; i < dim(); ++i) out.coeffs_[i] = -out.coeffs_[i];
    return out;
  }

  T norm2() const {
    T s = coeffs_[0] * coeffs_[0];
    for (int i = 1; i < dim(); ++i) s = s + coeffs_[i] * coeffs_[i];
    return s;
  }

  friend AlgElem operator*(const AlgElem& a, const AlgElem& b) {
    if (a.tag_ != b.tag_) throw StructuralError("algebra tag mismatch in product");
    const auto& sc = structure_constants(a.tag_);
    const int d = a.dim();
    std::vector<T> out(d, a.coeffs_[0] - a.coeffs_[0]);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        const auto& bp = sc.product(i, j);
        T term = a.coeffs_[i] * b.coeffs_[j];
        if (bp.sign > 0) {
          out[bp.index] = out[bp.index] + term;
        } else {
          out[bp.index] = out[bp.index] - term;
        }
      }
    }
    return AlgElem(a.tag_, std::move(out));
  }

  friend AlgElem operator+(const AlgElem& a, const AlgElem& b) {
    if (a.tag_ != b.tag_) throw StructuralError("algebra tag mismatch in sum");
    AlgElem out = a;
    for (int i = 0; i < a.dim(); ++i) out.coeffs_[i] = out.coeffs_[i] + b.coeffs_[i];
    return out;
  }

  friend AlgElem operator-(const AlgElem& a, const AlgElem& b) {
    if (a.tag_ != b.tag_) throw StructuralError("algebra tag mismatch in difference");
    AlgElem out = a;
    for (int i = 0; i < a.dim(); ++i) out.coeffs_[i] = out.coeffs_[i] - b.coeffs_[i];
    return out;
  }

  friend bool operator==(const AlgElem& a, const AlgElem& b) {
    return a.tag_ == b.tag_ && a.coeffs_ == b.coeffs_;
  }

 private:
  AlgebraTag tag_;
  std::vector<T> coeffs_;
};

}  // namespace isolab
