// Acceptance runner: one PASS/FAIL line per criterion. With --criterion N only
// that criterion runs; the exit status is nonzero when any selected one fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isolab/catalog.hpp"
#include "isolab/clifford.hpp"
#include "isolab/cm_verifier.hpp"
#include "isolab/division_algebras.hpp"
#include "isolab/families.hpp"
#include "isolab/nurowski.hpp"
#include "isolab/spectral.hpp"

namespace {

using namespace isolab;

constexpr AlgebraTag kTags[] = {AlgebraTag::R, AlgebraTag::C, AlgebraTag::H, AlgebraTag::O};

// Tolerances of the acceptance list.
constexpr double kSpacingTol = 1e-6;
constexpr double kSeedSpreadTol = 2e-6;
constexpr double kParallelTol = 1e-6;
constexpr double kOrbitSpacingTol = 1e-8;
constexpr double kCubicBudgetSeconds = 60.0;
constexpr double kQuarticBudgetSeconds = 120.0;
constexpr double kUpsilonBudgetSeconds = 60.0;

/// Accumulates sub-checks; the criterion passes when every one of them does.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++checks_;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return failures_.empty(); }

  std::string summary() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!failures_.empty()) {
      os << ", failed:";
      for (const auto& f : failures_) os << " [" << f << "]";
    }
    for (const auto& n : notes_) os << "; " << n;
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  int checks_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(1);
  os << std::scientific << v;
  return os.str();
}

std::string ints(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

Verdict exact_cubics() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (auto tag : kTags) {
    const auto fam = cartan_cubic(tag);
    const auto r = verify_cm(fam);
    const std::string name = fam.name + " dim " + std::to_string(fam.ambient_dim);
    v.expect(r.grad_residual.is_zero() && r.grad_identity_ok, name + ": |grad F|^2 - 9 r^4 != 0");
    v.expect(r.inferred_c.is_zero() && r.laplace_identity_ok, name + ": Laplacian != 0");
  }
  const double elapsed = seconds_since(start);
  v.expect(elapsed < kCubicBudgetSeconds, "runtime " + fixed(elapsed) + " s");
  v.note("runtime " + fixed(elapsed) + " s");
  return v;
}

Verdict exact_fkm_quartics() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const std::pair<int, int> systems[] = {{2, 2}, {3, 2}, {4, 2}, {5, 1}};
  const std::pair<int, int> tabulated[] = {{2, 1}, {3, 4}, {4, 3}, {5, 2}};
  for (int i = 0; i < 4; ++i) {
    const auto fam = fkm_family(systems[i].first, systems[i].second);
    const auto r = verify_cm(fam);
    const auto [m1, m2] = tabulated[i];
    v.expect(r.grad_identity_ok && r.grad_residual.is_zero(), fam.name + ": |grad F|^2 != 16 r^6");
    v.expect(r.laplace_identity_ok && r.inferred_c == ScalarQ3(8L * (m2 - m1)),
             fam.name + ": Laplacian " + r.inferred_c.to_string() + " r^2, expected " + std::to_string(8 * (m2 - m1)));
    v.expect(fam.expected_multiplicities == std::make_pair(m1, m2), fam.name + ": multiplicities differ from the table");
  }
  const double elapsed = seconds_since(start);
  v.expect(elapsed < kQuarticBudgetSeconds, "runtime " + fixed(elapsed) + " s");
  v.note("runtime " + fixed(elapsed) + " s");
  return v;
}

Verdict determinant_cross_check() {
  Verdict v;
  const Poly det = nurowski_det_cubic();
  const Poly expansion = nurowski_expansion();
  const Poly renamed = cartan_cubic(AlgebraTag::R).F.permute_variables(cartan_to_nurowski_renaming());
  const Poly diff = det - expansion;
  std::string residual = to_text(diff);
  std::replace(residual.begin(), residual.end(), '\n', ';');
  v.expect(is_zero(diff), "determinant - printed expansion has " + std::to_string(diff.terms().size()) +
                              " terms: " + residual);
  v.expect(is_zero(renamed - expansion), "renamed Cartan cubic != printed expansion");
  if (is_zero(det.scale_variable(4, ScalarQ3(-1)) - expansion))
    v.note("determinant equals the expansion after x5 -> -x5");
  return v;
}

Verdict upsilon_conditions() {
  Verdict v;
  for (auto tag : kTags) {
    const auto start = std::chrono::steady_clock::now();
    const auto U = extract_upsilon(cartan_cubic(tag).F);
    const auto r = check_conditions(U);
    const double elapsed = seconds_since(start);
    const std::string dim = "dim " + std::to_string(r.dim);
    v.expect(r.symmetric, dim + ": not symmetric");
    v.expect(r.trace_free, dim + ": not trace-free");
    v.expect(r.quadratic_identity, dim + ": quadratic identity fails on " + std::to_string(r.tuple_failures) + " tuples");
    if (r.dim == 26) {
      v.expect(elapsed < kUpsilonBudgetSeconds, "dim 26 runtime " + fixed(elapsed) + " s");
      v.note("dim 26 in " + fixed(elapsed) + " s");
    }
    const auto neg = check_conditions(U.scaled(ScalarQ3(2)));
    v.expect(!neg.quadratic_identity, dim + ": scaled tensor passes the quadratic identity");
  }
  return v;
}

void expect_structure(Verdict& v, const IsoparametricFamily& fam, int seeds, int p, const std::vector<int>& mults) {
  const LevelSetModel model(fam);
  const auto spectra = sample_spectra(model, 0.0, 1, seeds);
  for (std::size_t s = 0; s < spectra.size(); ++s) {
    const auto m = munzner_check(spectra[s], kSpacingTol);
    const std::string tag = fam.name + " seed " + std::to_string(s + 1);
    v.expect(spectra[s].p == p, tag + ": p = " + std::to_string(spectra[s].p));
    v.expect(spectra[s].multiplicities() == mults, tag + ": multiplicities " + ints(spectra[s].multiplicities()));
    v.expect(m.spacing_ok, tag + ": spacing error " + sci(m.max_spacing_error));
    v.expect(m.multiplicities_periodic, tag + ": m_k != m_(k+2)");
  }
  const double spread = spectrum_spread(spectra);
  v.expect(spread <= kSeedSpreadTol, fam.name + ": seed spread " + sci(spread));
  v.note(fam.name + " spread " + sci(spread));
}

Verdict spectral_structure() {
  Verdict v;
  expect_structure(v, cartan_cubic(AlgebraTag::H), 20, 3, {4, 4, 4});
  expect_structure(v, fkm_family(2, 2), 20, 4, {2, 1, 2, 1});
  return v;
}

Verdict parallel_and_focal() {
  Verdict v;
  const std::vector<IsoparametricFamily> families = {product_family(7, 4), cartan_cubic(AlgebraTag::R),
                                                     cartan_cubic(AlgebraTag::H), fkm_family(2, 2), nomizu_family(4)};
  const double shifts[] = {-0.2, -0.1, 0.05, 0.15, 0.25};
  double worst = 0.0;
  for (const auto& fam : families) {
    const LevelSetModel model(fam);
    const auto pt = sample_level(model, 0.1, 7);
    for (double t : shifts) {
      const auto r = parallel_check(model, pt, t);
      worst = std::max(worst, r.max_curvature_error);
      v.expect(r.ok && r.max_curvature_error <= kParallelTol,
               fam.name + " t=" + fixed(t) + ": error " + sci(r.max_curvature_error));
    }
  }
  v.note("worst parallel error " + sci(worst));

  const std::pair<IsoparametricFamily, std::vector<int>> focal_cases[] = {{product_family(7, 4), {3, 3}},
                                                                          {fkm_family(2, 2), {2, 1, 2, 1}}};
  for (const auto& [fam, expected] : focal_cases) {
    const LevelSetModel model(fam);
    const auto pt = sample_level(model, 0.1, 7);
    std::vector<int> nullities;
    for (int k = 0; k < fam.p; ++k) nullities.push_back(focal_check(model, pt, k).nullity);
    v.expect(nullities == expected, fam.name + ": focal nullities " + ints(nullities));
    v.note(fam.name + " nullities " + ints(nullities));
  }
  return v;
}

Verdict clifford_layer() {
  Verdict v;
  const int printed[] = {1, 2, 4, 4, 8, 8, 8, 8};
  for (int m = 1; m <= 8; ++m) v.expect(delta(m) == printed[m - 1], "delta(" + std::to_string(m) + ")");
  for (int k = 1; k <= 8; ++k) v.expect(delta(k + 8) == 16 * delta(k), "delta(" + std::to_string(k + 8) + ")");
  int systems = 0;
  for (int m = 1; m <= 9; ++m)
    for (int k = 1; k <= 3; ++k) {
      const auto s = build_system(build_generators(m, k));
      v.expect(validate_system(s).ok(), "system m=" + std::to_string(m) + " k=" + std::to_string(k));
      ++systems;
    }
  auto corrupted = build_system(build_generators(4, 2));
  corrupted.P[0] = IntMatrix::Identity(2 * corrupted.l, 2 * corrupted.l);
  v.expect(!validate_system(corrupted).ok(), "corrupted P0 accepted");
  v.note(std::to_string(systems) + " systems validated");
  return v;
}

Verdict nomizu() {
  Verdict v;
  for (int n = 3; n <= 5; ++n) {
    const auto fam = nomizu_family(n);
    const auto r = verify_cm(fam);
    v.expect(r.grad_identity_ok && r.grad_residual.is_zero(), fam.name + ": |grad F|^2 != 16 r^6");
    v.expect(r.inferred_m_diff && abs(*r.inferred_m_diff) == n - 2,
             fam.name + ": |m2 - m1| = " + (r.inferred_m_diff ? rational_text(abs(*r.inferred_m_diff)) : "?"));
  }
  const LevelSetModel model(nomizu_family(4));
  const auto s = cluster_spectrum(principal_curvatures(model, sample_level(model, 0.1, 3)));
  const auto m = munzner_check(s, kSpacingTol);
  auto mults = s.multiplicities();
  v.expect(s.p == 4, "nomizu(4): p = " + std::to_string(s.p));
  v.expect(m.multiplicities_periodic, "nomizu(4): m_k != m_(k+2)");
  v.expect(m.spacing_ok, "nomizu(4): spacing error " + sci(m.max_spacing_error));
  v.note("nomizu(4) multiplicities " + ints(mults));
  std::sort(mults.begin(), mults.end());
  v.expect(mults == std::vector<int>{1, 1, 3, 3}, "nomizu(4): multiplicities " + ints(mults));
  return v;
}

Verdict catalog() {
  Verdict v;
  for (const auto& mm : compare_with_printed_fkm_table()) {
    v.expect(false, "FKM table m=" + std::to_string(mm.m) + " k=" + std::to_string(mm.k) + ": printed " + mm.printed +
                        ", formula " + mm.computed);
  }
  for (const auto& c : check_rank2_table()) {
    if (c.exempt) {
      v.note(c.label + " exempt (flagged), implied dim " + std::to_string(c.implied_dim) + " vs printed " +
             std::to_string(c.printed_dim));
      continue;
    }
    v.expect(c.consistent, c.label + ": dim " + std::to_string(c.printed_dim) + " vs p(m1+m2)/2 = " +
                               std::to_string(c.implied_dim));
  }
  v.expect(inhomogeneity_predicate(3, 4, 3, false).verdict == InhomogeneityVerdict::inhomogeneous,
           "(3,4) not inhomogeneous");
  v.expect(inhomogeneity_predicate(5, 2, 5, false).verdict == InhomogeneityVerdict::inconclusive,
           "(5,2) not inconclusive");
  return v;
}

Verdict su3_orbit() {
  Verdict v;
  const auto rep = su3_orbit_spectrum();
  v.expect(rep.symmetric_with_zero, "spectrum is not {l, 0, -l}");
  const auto find = [&](const std::string& name) {
    return std::find_if(rep.normalizations.begin(), rep.normalizations.end(),
                        [&](const auto& n) { return n.name == name; });
  };
  const auto unit = find("unit");
  const auto printed = find("printed");
  v.expect(unit != rep.normalizations.end(), "no unit normalization");
  v.expect(printed != rep.normalizations.end(), "no printed normalization");
  if (unit == rep.normalizations.end() || printed == rep.normalizations.end()) return v;

  v.expect(unit->lambda_exact && unit->lambda_exact->to_double() > 0 &&
               *unit->lambda_exact * *unit->lambda_exact == rep.lambda_squared,
           "unit eigenvalue not exact and positive");
  v.expect(unit->max_spacing_error <= kOrbitSpacingTol, "unit spacing error " + sci(unit->max_spacing_error));
  v.expect(std::abs(printed->eigenvalues.front() - 1 / std::sqrt(3.0)) < 1e-15 &&
               std::abs(printed->eigenvalues.back() + 1 / std::sqrt(3.0)) < 1e-15,
           "printed values are not +-1/sqrt3");
  v.expect(!rep.caveat.empty(), "no normalization caveat");
  v.note("unit lambda = " + unit->lambda_exact->to_string() + ", spacing error " + sci(unit->max_spacing_error));
  return v;
}

// Flips the sign of one randomly chosen term.
Poly flip_one_term(const Poly& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, F.terms().size() - 1);
  auto it = F.terms().begin();
  std::advance(it, static_cast<long>(pick(rng)));
  Poly out = F;
  out.add_term(it->first, it->second * ScalarQ3(-2));
  return out;
}

Verdict properties() {
  Verdict v;
  std::vector<IsoparametricFamily> families = {linear_family(4), product_family(5, 2), fkm_family(2, 2),
                                               fkm_family(3, 2), fkm_family(4, 2), fkm_family(5, 1),
                                               nomizu_family(3), nomizu_family(4)};
  for (auto tag : kTags) families.push_back(cartan_cubic(tag));
  for (const auto& fam : families)
    v.expect(euler_check(fam.F, static_cast<unsigned>(fam.p)), fam.name + ": Euler identity");

  using Elem = AlgElem<Rational>;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  for (auto tag : kTags) {
    int bad = 0;
    for (int t = 0; t < 10000; ++t) {
      std::vector<Rational> a, b;
      for (int i = 0; i < algebra_dim(tag); ++i) {
        a.push_back(make_rational(num(rng), den(rng)));
        b.push_back(make_rational(num(rng), den(rng)));
      }
      const Elem x(tag, a), y(tag, b);
      bad += (x * y).norm2() != x.norm2() * y.norm2();
    }
    v.expect(bad == 0, algebra_name(tag) + ": norm not multiplicative in " + std::to_string(bad) + " trials");
  }

  const auto basis = [](int i) { return Elem::basis(AlgebraTag::O, i, Rational(0), Rational(1)); };
  const auto assoc = [](const Elem& a, const Elem& b, const Elem& c) { return (a * b) * c - a * (b * c); };
  const Elem zero = Elem::zero(AlgebraTag::O, Rational(0));
  int alternativity = 0, reassociation = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Elem x = basis(i), y = basis(j);
      alternativity += assoc(x, x, y) != zero || assoc(y, x, x) != zero;
      for (int k = 0; k < 8; ++k) {
        const Elem z = basis(k);
        reassociation += ((x * y) * z).re() != (x * (y * z)).re();
      }
    }
  v.expect(alternativity == 0, "octonion alternativity fails on " + std::to_string(alternativity) + " pairs");
  v.expect(reassociation == 0, "octonion re-association fails on " + std::to_string(reassociation) + " triples");

  std::mt19937_64 mrng(404);
  int mutants = 0, survivors = 0;
  for (const auto& fam : families) {
    if (fam.p < 2) continue;  // a linear form has no room for a sign flip to matter
    for (int t = 0; t < 5; ++t) {
      IsoparametricFamily mutated = fam;
      mutated.F = flip_one_term(fam.F, mrng);
      survivors += verify_cm(mutated).ok();
      ++mutants;
    }
  }
  v.expect(survivors == 0, std::to_string(survivors) + " of " + std::to_string(mutants) + " mutants verified");
  v.note(std::to_string(mutants) + " mutants rejected");
  return v;
}

const std::map<int, std::pair<std::string, std::function<Verdict()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Verdict()>>> table = {
      {1, {"exact Cartan-Muenzner identities for the cubics", exact_cubics}},
      {2, {"exact Cartan-Muenzner identities for FKM quartics", exact_fkm_quartics}},
      {3, {"determinant cubic cross-validation", determinant_cross_check}},
      {4, {"Upsilon conditions and negative control", upsilon_conditions}},
      {5, {"spectral structure", spectral_structure}},
      {6, {"parallel and focal laws", parallel_and_focal}},
      {7, {"Clifford layer", clifford_layer}},
      {8, {"Nomizu family", nomizu}},
      {9, {"catalog tables and predicate", catalog}},
      {10, {"SU(3)/SO(3) orbit", su3_orbit}},
      {11, {"property suites", properties}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  bool all_passed = true;
  for (const auto& [id, entry] : criteria()) {
    if (only != 0 && id != only) continue;
    const auto& [title, fn] = entry;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    all_passed = all_passed && v.passed();
    std::cout << "criterion " << id << ": " << (v.passed() ? "PASS" : "FAIL") << " " << title << " (" << v.summary()
              << ")" << std::endl;
  }
  return all_passed ? 0 : 1;
}
