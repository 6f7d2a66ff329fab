#pragma once

/**
 * Exact scalars in Q(sqrt3) and sparse multivariate polynomials.
 *
 * Every polynomial identity checked by this library is decided by exact
 * subtraction followed by an emptiness test on the sparse term map, so no
 * floating tolerance enters any symbolic verdict.
 *
 * Variables are indexed from 0. A polynomial carries its ambient variable
 * count; operands of binary operations must agree on it.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "isolab/errors.hpp"

namespace isolab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den" or "num". The result is canonical.
inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw StructuralError("malformed rational '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw DomainError("rational with zero denominator");
  q.canonicalize();
  return q;
}

/// Always "num/den", also for integers, so the text form is fixed-width per field.
inline std::string rational_text(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/**
 * An element a + b*sqrt(3) of the field Q(sqrt3).
 *
 * Both parts are canonical GMP rationals, so equality is field-wise and the
 * zero element is unique.
 */
class ScalarQ3 {
 public:
  ScalarQ3() = default;
  ScalarQ3(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  ScalarQ3(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  ScalarQ3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static ScalarQ3 sqrt3() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt3_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Galois conjugate a - b*sqrt3.
  ScalarQ3 conjugate() const { return {a_, -b_}; }

  /// Field norm (a + b sqrt3)(a - b sqrt3) = a^2 - 3 b^2; zero only for zero.
  Rational norm() const { return Rational(a_ * a_ - 3 * b_ * b_); }

  ScalarQ3 inverse() const {
    if (is_zero()) throw DomainError("inverse of zero in Q(sqrt3)");
    if (is_rational()) return {Rational(1 / a_), Rational(0)};
    Rational n = norm();
    return {Rational(a_ / n), Rational(-b_ / n)};
  }

  double to_double() const {
    static const double kSqrt3 = std::sqrt(3.0);
    return a_.get_d() + b_.get_d() * kSqrt3;
  }

  std::string to_string() const {
    if (is_rational()) return a_.get_str();
    std::string s;
    if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
    return s + b_.get_str() + "*sqrt3";
  }

  ScalarQ3& operator+=(const ScalarQ3& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  ScalarQ3& operator-=(const ScalarQ3& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  ScalarQ3& operator*=(const ScalarQ3& o) {
    if (is_rational() && o.is_rational()) {
      a_ *= o.a_;
      return *this;
    }
    Rational a = a_ * o.a_ + 3 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  ScalarQ3& operator/=(const ScalarQ3& o) { return *this *= o.inverse(); }

  friend ScalarQ3 operator+(ScalarQ3 x, const ScalarQ3& y) { return x += y; }
  friend ScalarQ3 operator-(ScalarQ3 x, const ScalarQ3& y) { return x -= y; }
  friend ScalarQ3 operator*(ScalarQ3 x, const ScalarQ3& y) { return x *= y; }
  friend ScalarQ3 operator/(ScalarQ3 x, const ScalarQ3& y) { return x /= y; }
  friend ScalarQ3 operator-(const ScalarQ3& x) { return {Rational(-x.a_), Rational(-x.b_)}; }
  friend bool operator==(const ScalarQ3& x, const ScalarQ3& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

inline bool is_zero_coefficient(const ScalarQ3& c) { return c.is_zero(); }
inline bool is_zero_coefficient(double c) { return c == 0.0; }
inline bool is_zero_coefficient(const Rational& c) { return sgn(c) == 0; }

inline double to_double(const ScalarQ3& c) { return c.to_double(); }
inline double to_double(double c) { return c; }
inline double to_double(const Rational& c) { return c.get_d(); }

/// Exact square root inside Q(sqrt3) of a nonnegative rational, when one exists
/// of the form r or r*sqrt3 with r rational.
inline std::optional<ScalarQ3> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  auto rational_sqrt = [](const Rational& v) -> std::optional<Rational> {
    if (!mpz_perfect_square_p(v.get_num_mpz_t()) || !mpz_perfect_square_p(v.get_den_mpz_t())) {
      return std::nullopt;
    }
    mpz_class n = sqrt(mpz_class(v.get_num()));
    mpz_class d = sqrt(mpz_class(v.get_den()));
    Rational r(n, d);
    r.canonicalize();
    return r;
  };
  if (auto r = rational_sqrt(q)) return ScalarQ3(*r);
  if (auto r = rational_sqrt(Rational(q / 3))) return ScalarQ3(Rational(0), *r);
  return std::nullopt;
}

template <class C>
concept PolyCoefficient = std::copyable<C> && requires(C a, const C& b) {
  { a += b };
  { a -= b };
  { a *= b };
  { is_zero_coefficient(b) } -> std::convertible_to<bool>;
  { b == b } -> std::convertible_to<bool>;
};

/// Exponent vector; ordering is lexicographic, which is the canonical term order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  Monomial(std::initializer_list<std::uint32_t> e) : exps_(e) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps_(std::move(e)) {}

  std::size_t num_vars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(exps_[i]);
    }
    return s + "]";
  }

 private:
  std::vector<std::uint32_t> exps_;
};

template <PolyCoefficient C>
class BasicPoly {
 public:
  using coefficient_type = C;
  using term_map = std::map<Monomial, C>;

  BasicPoly() = default;
  explicit BasicPoly(std::size_t num_vars) : num_vars_(num_vars) {}

  static BasicPoly constant(std::size_t num_vars, const C& c) {
    BasicPoly p(num_vars);
    p.add_term(Monomial(num_vars), c);
    return p;
  }

  /// The coordinate function x_i.
  static BasicPoly variable(std::size_t num_vars, std::size_t i) {
    if (i >= num_vars) throw StructuralError("variable index out of range");
    Monomial m(num_vars);
    m[i] = 1;
    BasicPoly p(num_vars);
    p.add_term(std::move(m), C(1));
    return p;
  }

  /// r^2 = sum_i x_i^2.
  static BasicPoly squared_radius(std::size_t num_vars) {
    BasicPoly p(num_vars);
    for (std::size_t i = 0; i < num_vars; ++i) {
      Monomial m(num_vars);
      m[i] = 2;
      p.add_term(std::move(m), C(1));
    }
    return p;
  }

  /// (r^2)^k.
  static BasicPoly radial_power(std::size_t num_vars, unsigned k) {
    return squared_radius(num_vars).pow(k);
  }

  std::size_t num_vars() const { return num_vars_; }
  const term_map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Monomial m, const C& c) {
    if (m.num_vars() != num_vars_) throw StructuralError("monomial length does not match num_vars");
    auto it = terms_.lower_bound(m);
    if (it != terms_.end() && it->first == m) {
      it->second += c;
      if (is_zero_coefficient(it->second)) terms_.erase(it);
    } else if (!is_zero_coefficient(c)) {
      terms_.emplace_hint(it, std::move(m), c);
    }
  }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Maximum total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
    return d;
  }

  /// The zero polynomial is homogeneous of every degree.
  bool is_homogeneous(unsigned d) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return t.first.degree() == d; });
  }

  std::vector<Monomial> monomials_not_of_degree(unsigned d) const {
    std::vector<Monomial> out;
    for (const auto& [m, c] : terms_) {
      if (m.degree() != d) out.push_back(m);
    }
    return out;
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) {
      C neg(0);
      neg -= c;
      add_term(m, neg);
    }
    return *this;
  }
  BasicPoly& operator*=(const C& s) {
    if (is_zero_coefficient(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPoly operator+(BasicPoly p, const BasicPoly& q) { return p += q; }
  friend BasicPoly operator-(BasicPoly p, const BasicPoly& q) { return p -= q; }
  friend BasicPoly operator*(BasicPoly p, const C& s) { return p *= s; }
  friend BasicPoly operator*(const C& s, BasicPoly p) { return p *= s; }
  friend BasicPoly operator-(BasicPoly p) { return p *= C(-1); }

  friend BasicPoly operator*(const BasicPoly& p, const BasicPoly& q) {
    p.check_compatible(q);
    BasicPoly out(p.num_vars_);
    Monomial scratch(p.num_vars_);
    for (const auto& [mp, cp] : p.terms_) {
      for (const auto& [mq, cq] : q.terms_) {
        for (std::size_t i = 0; i < p.num_vars_; ++i) scratch[i] = mp[i] + mq[i];
        C c = cp;
        c *= cq;
        auto it = out.terms_.lower_bound(scratch);
        if (it != out.terms_.end() && it->first == scratch) {
          it->second += c;
        } else {
          out.terms_.emplace_hint(it, scratch, std::move(c));
        }
      }
    }
    out.prune();
    return out;
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  friend bool operator==(const BasicPoly& p, const BasicPoly& q) {
    return p.num_vars_ == q.num_vars_ && p.terms_ == q.terms_;
  }

  BasicPoly pow(unsigned k) const {
    BasicPoly result = constant(num_vars_, C(1));
    BasicPoly base = *this;
    while (k) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k) base = base * base;
    }
    return result;
  }

  BasicPoly differentiate(std::size_t i) const {
    if (i >= num_vars_) throw StructuralError("differentiation index out of range");
    BasicPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      Monomial d = m;
      C dc = c;
      dc *= C(static_cast<long>(d[i]));
      d[i] -= 1;
      out.terms_.emplace(std::move(d), std::move(dc));
    }
    return out;
  }

  std::vector<BasicPoly> gradient() const {
    std::vector<BasicPoly> g;
    g.reserve(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) g.push_back(differentiate(i));
    return g;
  }

  BasicPoly laplacian() const {
    BasicPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (m[i] < 2) continue;
        Monomial d = m;
        C dc = c;
        dc *= C(static_cast<long>(d[i]) * static_cast<long>(d[i] - 1));
        d[i] -= 2;
        out.add_term(std::move(d), dc);
      }
    }
    return out;
  }

  /// Replaces x_i by x_{perm[i]}.
  BasicPoly permute_variables(std::span<const std::size_t> perm) const {
    if (perm.size() != num_vars_) throw StructuralError("permutation length mismatch");
    BasicPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      Monomial r(num_vars_);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (perm[i] >= num_vars_) throw StructuralError("permutation entry out of range");
        r[perm[i]] += m[i];
      }
      out.add_term(std::move(r), c);
    }
    return out;
  }

  /// Substitutes x_i -> s * x_i.
  BasicPoly scale_variable(std::size_t i, const C& s) const {
    if (i >= num_vars_) throw StructuralError("variable index out of range");
    BasicPoly out(num_vars_);
    for (const auto& [m, c] : terms_) {
      C v = c;
      for (std::uint32_t e = 0; e < m[i]; ++e) v *= s;
      out.add_term(m, v);
    }
    return out;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<std::invoke_result_t<F, const C&>>;
    BasicPoly<D> out(num_vars_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

  /// Exact evaluation in the coefficient field.
  C evaluate(std::span<const C> point) const {
    if (point.size() != num_vars_) throw StructuralError("evaluation point length mismatch");
    return evaluate_with<C>(point, [](const C& c) { return c; });
  }

  /// Floating evaluation, monomial-wise with cached powers.
  double evaluate_numeric(std::span<const double> point) const {
    if (point.size() != num_vars_) throw StructuralError("evaluation point length mismatch");
    return evaluate_with<double>(point, [](const C& c) { return to_double(c); });
  }

 private:
  void check_compatible(const BasicPoly& o) const {
    if (o.num_vars_ != num_vars_) {
      throw StructuralError("variable-count mismatch: " + std::to_string(num_vars_) + " vs " +
                            std::to_string(o.num_vars_));
    }
  }

  void prune() {
    std::erase_if(terms_, [](const auto& t) { return is_zero_coefficient(t.second); });
  }

  template <class V, class Conv>
  V evaluate_with(std::span<const V> point, Conv conv) const {
    std::vector<std::uint32_t> max_exp(num_vars_, 0);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < num_vars_; ++i) max_exp[i] = std::max(max_exp[i], m[i]);
    }
    std::vector<std::vector<V>> powers(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      powers[i].reserve(max_exp[i] + 1);
      powers[i].push_back(V(1));
      for (std::uint32_t e = 1; e <= max_exp[i]; ++e) {
        V next = powers[i].back();
        next *= point[i];
        powers[i].push_back(std::move(next));
      }
    }
    V total(0);
    for (const auto& [m, c] : terms_) {
      V v = conv(c);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (m[i]) v *= powers[i][m[i]];
      }
      total += v;
    }
    return total;
  }

  std::size_t num_vars_ = 0;
  term_map terms_;
};

using Poly = BasicPoly<ScalarQ3>;
using NumericPoly = BasicPoly<double>;

template <class C>
bool is_zero(const BasicPoly<C>& p) {
  return p.is_zero();
}

template <class C>
BasicPoly<C> laplacian(const BasicPoly<C>& p) {
  return p.laplacian();
}

/// sum_i (d_i p)^2.
template <class C>
BasicPoly<C> gradient_norm_squared(const BasicPoly<C>& p) {
  BasicPoly<C> out(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) {
    BasicPoly<C> d = p.differentiate(i);
    out += d * d;
  }
  return out;
}

/// Euler's identity sum_i x_i d_i p = d p. Throws PreconditionError when p has
/// monomials of degree other than d.
template <class C>
bool euler_check(const BasicPoly<C>& p, unsigned d) {
  auto bad = p.monomials_not_of_degree(d);
  if (!bad.empty()) {
    std::string msg = "euler_check: polynomial is not homogeneous of degree " + std::to_string(d) +
                      "; offending monomials:";
    for (std::size_t i = 0; i < bad.size() && i < 8; ++i) msg += " " + bad[i].to_string();
    if (bad.size() > 8) msg += " ...";
    throw PreconditionError(msg);
  }
  const std::size_t n = p.num_vars();
  BasicPoly<C> lhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    lhs += BasicPoly<C>::variable(n, i) * p.differentiate(i);
  }
  lhs -= p * C(static_cast<long>(d));
  return lhs.is_zero();
}

/// One term per line: "a_num/a_den b_num/b_den e_1 ... e_n", lexicographic order.
inline std::string to_text(const Poly& p) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    out += rational_text(c.rational_part());
    out += ' ';
    out += rational_text(c.sqrt3_part());
    for (auto e : m.exponents()) {
      out += ' ';
      out += std::to_string(e);
    }
    out += '\n';
  }
  return out;
}

/// Inverse of to_text. The variable count is taken from the first term unless
/// given; it is required for the empty (zero) polynomial.
inline Poly poly_from_text(std::string_view text, std::optional<std::size_t> num_vars = std::nullopt) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Poly> p;
  if (num_vars) p.emplace(*num_vars);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) throw StructuralError("malformed term line '" + line + "'");
    std::vector<std::uint32_t> exps;
    long e = 0;
    while (fields >> e) {
      if (e < 0) throw StructuralError("negative exponent in '" + line + "'");
      exps.push_back(static_cast<std::uint32_t>(e));
    }
    if (!fields.eof()) throw StructuralError("malformed exponent in '" + line + "'");
    if (!p) p.emplace(exps.size());
    if (exps.size() != p->num_vars()) throw StructuralError("exponent count mismatch in '" + line + "'");
    p->add_term(Monomial(std::move(exps)), ScalarQ3(parse_rational(a), parse_rational(b)));
  }
  if (!p) throw StructuralError("empty polynomial text requires an explicit variable count");
  return std::move(*p);
}

}  // namespace isolab
