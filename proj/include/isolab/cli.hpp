#pragma once

// Command dispatch behind the isolab executable. Argument parsing lives in the
// tool; everything here works on a RunConfig so it can be driven from tests.
//
// Exit codes: 0 every requested check passed, 1 a check failed or a numerical
// procedure gave up, 2 the request itself was invalid.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "isolab/catalog.hpp"
#include "isolab/clifford.hpp"
#include "isolab/cm_verifier.hpp"
#include "isolab/families.hpp"
#include "isolab/nurowski.hpp"
#include "isolab/report.hpp"
#include "isolab/spectral.hpp"

namespace isolab::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr const char* kThreadsEnv = "ISOLAB_THREADS";

enum class OutputFormat { json, csv, poly_text };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerances {
  double cluster = kDefaultClusterTolerance;
  double spacing = kMunznerSpacingTolerance;
  double seed_spread = 2e-6;
  double parallel = kParallelTolerance;
  double focal_threshold = kFocalSingularThreshold;
  double orbit_spacing = 1e-8;
};

struct RunConfig {
  std::string command;
  std::string subcommand;
  FamilySelector family;

  double level = 0.0;
  std::uint64_t seed = kDefaultSeed;
  int seeds = 1;
  std::vector<double> angles = {-0.2, -0.1, 0.1, 0.2, 0.3};
  std::optional<int> curvature_index;

  int dim = 5;
  bool negative_control = false;

  int max_k = 5;
  int max_m = 9;
  bool compare_printed = false;
  int m1 = 1;
  int m2 = 1;
  std::optional<int> clifford_m;
  bool degenerate = false;

  Tolerances tol;
  std::string output_path;
  OutputFormat format = OutputFormat::json;
  bool dump_poly = false;
  int threads = 0;  // 0: ISOLAB_THREADS, else hardware concurrency
};

inline int resolve_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kThreadsEnv) + " must be a positive integer, got '" + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

/// Evaluates fn(0..count-1) on up to `threads` workers; results keep index order.
template <typename Fn>
auto indexed_map(int count, int threads, Fn fn) -> std::vector<decltype(fn(0))> {
  using R = decltype(fn(0));
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(count));
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int i = w; i < count; i += workers) slots[static_cast<std::size_t>(i)].emplace(fn(i));
    }));
  }
  for (auto& j : jobs) j.get();
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct Result {
  Result() = default;
  explicit Result(report::ordered_json b) : body(std::move(b)) {}

  report::ordered_json body;
  bool ok = true;
  std::optional<std::string> text;  // non-JSON payload (CSV or polynomial text)
};

inline IsoparametricFamily family_of(const RunConfig& cfg) { return make_family(cfg.family); }

inline void attach_poly(report::ordered_json& j, const RunConfig& cfg, const IsoparametricFamily& fam) {
  if (cfg.dump_poly) j["polynomial"] = to_text(fam.F);
}

inline Result family_build(const RunConfig& cfg) {
  const auto fam = family_of(cfg);
  Result r(report::envelope("family build"));
  r.body["family"] = report::to_json(fam);
  if (cfg.dump_poly || cfg.format == OutputFormat::poly_text) r.text = to_text(fam.F) + "\n";
  return r;
}

inline Result verify_cm_command(const RunConfig& cfg) {
  const auto fam = family_of(cfg);
  const auto cm = verify_cm(fam);
  Result r(report::envelope("verify cm"));
  r.body["family"] = report::to_json(fam);
  r.body["report"] = report::to_json(cm);
  bool ok = cm.ok();
  if (cm.ok() && fam.p % 2 == 0) {
    try {
      const auto solved = multiplicity_solve(fam.p, fam.sphere_dim(), *cm.inferred_m_diff);
      r.body["solved_multiplicities"] = {solved.first, solved.second};
    } catch (const InconsistencyError& e) {
      r.body["solved_multiplicities"] = e.what();
      ok = false;
    }
  }
  attach_poly(r.body, cfg, fam);
  r.body["ok"] = ok;
  r.ok = ok;
  return r;
}

inline Result spectrum_command(const RunConfig& cfg) {
  if (cfg.seeds < 1) throw UsageError("--seeds must be positive");
  const auto fam = family_of(cfg);
  const LevelSetModel model(fam);
  const auto spectra = indexed_map(cfg.seeds, resolve_threads(cfg), [&](int i) {
    const auto pt = sample_level(model, cfg.level, cfg.seed + static_cast<std::uint64_t>(i));
    return cluster_spectrum(principal_curvatures(model, pt), cfg.tol.cluster);
  });
  const auto munzner = munzner_check(spectra.front(), cfg.tol.spacing);
  const double spread = spectrum_spread(spectra);

  Result r(report::envelope("spectrum"));
  r.body["family"] = report::to_json(fam);
  r.body["level"] = cfg.level;
  r.body["seed"] = cfg.seed;
  r.body["seeds"] = cfg.seeds;
  r.body["orientation"] = kOrientationConvention;
  r.body["spectrum"] = report::to_json(spectra.front());
  r.body["munzner"] = report::to_json(munzner);
  r.body["seed_spread"] = spread;
  r.body["seed_spread_ok"] = spread <= cfg.tol.seed_spread;
  r.ok = munzner.ok() && spread <= cfg.tol.seed_spread;
  r.body["ok"] = r.ok;
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "seed,index,eigenvalue\n";
    csv.precision(17);
    for (std::size_t s = 0; s < spectra.size(); ++s)
      for (std::size_t i = 0; i < spectra[s].eigenvalues.size(); ++i)
        csv << cfg.seed + s << ',' << i << ',' << spectra[s].eigenvalues[i] << '\n';
    r.text = csv.str();
  }
  return r;
}

inline Result parallel_command(const RunConfig& cfg) {
  const auto fam = family_of(cfg);
  const LevelSetModel model(fam);
  const auto pt = sample_level(model, cfg.level, cfg.seed);
  Result r(report::envelope("parallel"));
  r.body["family"] = report::to_json(fam);
  r.body["level"] = cfg.level;
  r.body["seed"] = cfg.seed;
  auto checks = report::ordered_json::array();
  for (double t : cfg.angles) {
    const auto pr = parallel_check(model, pt, t, cfg.tol.parallel);
    checks.push_back(report::to_json(pr));
    r.ok = r.ok && pr.ok;
  }
  r.body["checks"] = checks;
  r.body["ok"] = r.ok;
  return r;
}

inline Result focal_command(const RunConfig& cfg) {
  const auto fam = family_of(cfg);
  const LevelSetModel model(fam);
  const auto pt = sample_level(model, cfg.level, cfg.seed);
  const auto s = cluster_spectrum(principal_curvatures(model, pt), cfg.tol.cluster);
  std::vector<int> indices;
  if (cfg.curvature_index) {
    if (*cfg.curvature_index < 0 || *cfg.curvature_index >= s.p) {
      throw UsageError("--index must lie in [0, " + std::to_string(s.p) + ")");
    }
    indices.push_back(*cfg.curvature_index);
  } else {
    for (int k = 0; k < s.p; ++k) indices.push_back(k);
  }
  Result r(report::envelope("focal"));
  r.body["family"] = report::to_json(fam);
  r.body["level"] = cfg.level;
  r.body["seed"] = cfg.seed;
  auto checks = report::ordered_json::array();
  for (int k : indices) {
    auto fr = jacobian_nullity(model, pt, s.thetas[static_cast<std::size_t>(k)], cfg.tol.focal_threshold);
    fr.curvature_index = k;
    fr.expected_nullity = s.clusters[static_cast<std::size_t>(k)].multiplicity;
    fr.ok = fr.nullity == fr.expected_nullity;
    checks.push_back(report::to_json(fr));
    r.ok = r.ok && fr.ok;
  }
  r.body["checks"] = checks;
  r.body["ok"] = r.ok;
  return r;
}

inline Result nurowski_check_command(const RunConfig& cfg) {
  const auto& rows = dimension_catalog();
  const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& row) { return row.n == cfg.dim; });
  if (it == rows.end()) throw UsageError("--dim must be one of 5, 8, 14, 26; got " + std::to_string(cfg.dim));
  const AlgebraTag tag = it->k == 1 ? AlgebraTag::R : it->k == 2 ? AlgebraTag::C : it->k == 4 ? AlgebraTag::H
                                                                                               : AlgebraTag::O;
  const auto U = extract_upsilon(cartan_cubic(tag).F);
  const auto cond = check_conditions(U);
  Result r(report::envelope("nurowski check"));
  r.body["dim"] = cfg.dim;
  r.body["group"] = it->group;
  r.body["compact_model"] = it->compact_model;
  if (!it->source_note.empty()) r.body["source_note"] = it->source_note;
  r.body["stored_entries"] = U.stored_entries();
  r.body["conditions"] = report::to_json(cond);
  r.body["trace_relation"] = trace_relation_holds(U);
  r.ok = cond.ok();
  if (cfg.negative_control) {
    const auto neg = check_conditions(U.scaled(ScalarQ3(2)));
    r.body["negative_control"] = {{"scale", 2}, {"rejected", !neg.ok()}, {"tuple_failures", neg.tuple_failures}};
    r.ok = r.ok && !neg.ok();
  }
  r.body["ok"] = r.ok;
  return r;
}

inline Result nurowski_crosscheck_command(const RunConfig&) {
  const Poly det = nurowski_det_cubic();
  const Poly expansion = nurowski_expansion();
  const Poly renamed = cartan_cubic(AlgebraTag::R).F.permute_variables(cartan_to_nurowski_renaming());
  const bool det_ok = is_zero(det - expansion);
  const bool cartan_ok = is_zero(renamed - expansion);
  const bool flipped_ok = is_zero(det.scale_variable(4, ScalarQ3(-1)) - expansion);
  Result r(report::envelope("nurowski crosscheck"));
  r.body["determinant_equals_expansion"] = det_ok;
  r.body["determinant_minus_expansion"] = report::residual_summary(det - expansion);
  r.body["determinant_with_x5_negated_equals_expansion"] = flipped_ok;
  r.body["renamed_cartan_equals_expansion"] = cartan_ok;
  r.ok = det_ok && cartan_ok;
  r.body["ok"] = r.ok;
  return r;
}

inline Result clifford_build_command(const RunConfig& cfg) {
  const int m = cfg.clifford_m.value_or(cfg.family.m);
  const auto gens = build_generators(m, cfg.family.k);
  const auto sys = build_system(gens);
  const auto v = validate_system(sys);
  Result r(report::envelope("clifford build"));
  r.body["m"] = m;
  r.body["k"] = cfg.family.k;
  r.body["delta_m"] = delta(m);
  r.body["l"] = sys.l;
  r.body["matrices"] = sys.P.size();
  r.body["validation"] = report::to_json(v);
  r.ok = v.ok();
  r.body["ok"] = r.ok;
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream csv;
    csv << "matrix,row,col,value\n";
    for (std::size_t i = 0; i < sys.P.size(); ++i)
      for (Eigen::Index a = 0; a < sys.P[i].rows(); ++a)
        for (Eigen::Index b = 0; b < sys.P[i].cols(); ++b)
          if (sys.P[i](a, b) != 0) csv << i << ',' << a << ',' << b << ',' << sys.P[i](a, b) << '\n';
    r.text = csv.str();
  }
  return r;
}

inline Result catalog_rank2(const RunConfig& cfg) {
  Result r(report::envelope("catalog rank2"));
  auto rows = report::ordered_json::array();
  std::ostringstream csv;
  csv << "g,h,p,dim_M,multiplicities,consistent,flagged\n";
  for (const auto& row : rank2_table()) {
    const auto c = check_rank2_row(row);
    rows.push_back(report::to_json(row, c));
    if (!c.consistent && !c.exempt) r.ok = false;
    csv << row.g << ',' << row.h << ',' << row.p << ',' << rows.back()["dim_M"].dump() << ",\""
        << row.multiplicities << "\"," << c.consistent << ',' << row.flagged << '\n';
  }
  r.body["rows"] = rows;
  r.body["citation"] = report::cite::kRank2;
  r.body["ok"] = r.ok;
  if (cfg.format == OutputFormat::csv) r.text = csv.str();
  return r;
}

inline Result catalog_fkm_table(const RunConfig& cfg) {
  const auto table = fkm_table(cfg.max_k, cfg.max_m);
  Result r(report::envelope("catalog fkm-table"));
  auto entries = report::ordered_json::array();
  std::ostringstream csv;
  csv << "k,m,delta_m,m1,m2\n";
  for (const auto& e : table) {
    entries.push_back(report::to_json(e));
    csv << e.k << ',' << e.m << ',' << e.delta_m << ',';
    if (e.pair) csv << e.pair->first << ',' << e.pair->second << '\n';
    else csv << "-,-\n";
  }
  r.body["entries"] = entries;
  r.body["citation"] = report::cite::kFkm;
  if (cfg.compare_printed) {
    auto mismatches = report::ordered_json::array();
    for (const auto& mm : compare_with_printed_fkm_table()) {
      mismatches.push_back({{"m", mm.m}, {"k", mm.k}, {"printed", mm.printed}, {"computed", mm.computed}});
    }
    r.ok = mismatches.empty();
    r.body["printed_mismatches"] = mismatches;
  }
  r.body["ok"] = r.ok;
  if (cfg.format == OutputFormat::csv) r.text = csv.str();
  return r;
}

inline Result catalog_inhom(const RunConfig& cfg) {
  const int m = cfg.clifford_m.value_or(cfg.m1);
  Result r(report::envelope("catalog inhom"));
  r.body["m1"] = cfg.m1;
  r.body["m2"] = cfg.m2;
  r.body["m"] = m;
  r.body["result"] = report::to_json(inhomogeneity_predicate(cfg.m1, cfg.m2, m, cfg.degenerate));
  r.body["ok"] = true;
  return r;
}

inline Result catalog_su3_orbit(const RunConfig& cfg) {
  const auto rep = su3_orbit_spectrum();
  Result r(report::envelope("catalog su3-orbit"));
  r.body["orbit"] = report::to_json(rep);
  const auto unit = std::find_if(rep.normalizations.begin(), rep.normalizations.end(),
                                 [](const auto& n) { return n.name == "unit"; });
  r.ok = rep.symmetric_with_zero && unit != rep.normalizations.end() &&
         unit->max_spacing_error <= cfg.tol.orbit_spacing;
  r.body["ok"] = r.ok;
  return r;
}

inline Result dispatch(const RunConfig& cfg) {
  const std::string key = cfg.command + " " + cfg.subcommand;
  if (key == "family build") return family_build(cfg);
  if (key == "verify cm") return verify_cm_command(cfg);
  if (cfg.command == "spectrum") return spectrum_command(cfg);
  if (cfg.command == "parallel") return parallel_command(cfg);
  if (cfg.command == "focal") return focal_command(cfg);
  if (key == "nurowski check") return nurowski_check_command(cfg);
  if (key == "nurowski crosscheck") return nurowski_crosscheck_command(cfg);
  if (key == "clifford build") return clifford_build_command(cfg);
  if (key == "catalog rank2") return catalog_rank2(cfg);
  if (key == "catalog fkm-table") return catalog_fkm_table(cfg);
  if (key == "catalog inhom") return catalog_inhom(cfg);
  if (key == "catalog su3-orbit") return catalog_su3_orbit(cfg);
  throw UsageError("unknown command '" + key + "'");
}

}  // namespace detail

/// Runs one command, writing the report to `out` (or cfg.output_path) and diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  detail::Result result;
  try {
    result = detail::dispatch(cfg);
  } catch (const std::invalid_argument& e) {  // usage, precondition and structural errors
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string payload = result.text ? *result.text : result.body.dump(2) + "\n";
  if (cfg.output_path.empty()) {
    out << payload;
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << '\n';
      return 2;
    }
    file << payload;
  }
  if (!result.ok) err << "verification failed: " << cfg.command << ' ' << cfg.subcommand << '\n';
  return result.ok ? 0 : 1;
}

}  // namespace isolab::cli
