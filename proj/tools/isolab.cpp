#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "isolab/cli.hpp"

namespace {

using isolab::cli::OutputFormat;
using isolab::cli::RunConfig;

struct FamilyArgs {
  std::string algebra = "R";
};

void add_family_options(CLI::App* app, RunConfig& cfg, FamilyArgs& fa) {
  app->add_option("--family", cfg.family.family, "linear | product | cartan-cubic | fkm | nomizu")
      ->check(CLI::IsMember({"linear", "product", "cartan-cubic", "fkm", "nomizu"}))
      ->required();
  app->add_option("--n", cfg.family.n, "sphere dimension parameter (linear, product, nomizu)");
  app->add_option("--k", cfg.family.k, "product split or FKM number of irreducible blocks");
  app->add_option("--m", cfg.family.m, "FKM Clifford parameter m");
  app->add_option("--algebra", fa.algebra, "division algebra for cartan-cubic")
      ->check(CLI::IsMember({"R", "C", "H", "O"}));
}

void add_sampling_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--t", cfg.level, "level value F = t on the sphere");
  app->add_option("--seed", cfg.seed, "seed for the sampled surface point");
  app->add_option("--cluster-tol", cfg.tol.cluster, "eigenvalue clustering tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  FamilyArgs fa;
  std::string format = "json";

  CLI::App app{"Verification toolkit for isoparametric hypersurfaces in spheres"};
  app.require_subcommand(1);
  app.add_option("--output,-o", cfg.output_path, "write the report to a file instead of stdout");
  app.add_option("--format", format, "json | csv | poly-text")->check(CLI::IsMember({"json", "csv", "poly-text"}));
  app.add_option("--threads", cfg.threads, "worker threads (default: $ISOLAB_THREADS or hardware)");
  app.add_flag("--dump-poly", cfg.dump_poly, "emit the polynomial in text form");
  app.fallthrough();

  auto* family = app.add_subcommand("family", "polynomial families");
  family->require_subcommand(1);
  auto* family_build = family->add_subcommand("build", "construct a family and describe it");
  add_family_options(family_build, cfg, fa);

  auto* verify = app.add_subcommand("verify", "exact identity checks");
  verify->require_subcommand(1);
  auto* verify_cm = verify->add_subcommand("cm", "Cartan-Muenzner identities");
  add_family_options(verify_cm, cfg, fa);

  auto* spectrum = app.add_subcommand("spectrum", "principal curvatures at sampled points");
  add_family_options(spectrum, cfg, fa);
  add_sampling_options(spectrum, cfg);
  spectrum->add_option("--seeds", cfg.seeds, "number of consecutive seeds to sample");
  spectrum->add_option("--spread-tol", cfg.tol.seed_spread, "allowed eigenvalue spread across seeds");
  spectrum->add_option("--spacing-tol", cfg.tol.spacing, "allowed deviation of cot-angle spacing from pi/p");

  auto* parallel = app.add_subcommand("parallel", "curvatures of parallel hypersurfaces");
  add_family_options(parallel, cfg, fa);
  add_sampling_options(parallel, cfg);
  parallel->add_option("--angles", cfg.angles, "normal displacement angles")->delimiter(',');
  parallel->add_option("--tol", cfg.tol.parallel, "curvature tolerance");

  auto* focal = app.add_subcommand("focal", "rank collapse of the parallel map at focal angles");
  add_family_options(focal, cfg, fa);
  add_sampling_options(focal, cfg);
  focal->add_option("--index", cfg.curvature_index, "single curvature index (default: all)");
  focal->add_option("--threshold", cfg.tol.focal_threshold, "singular value threshold");

  auto* nurowski = app.add_subcommand("nurowski", "symmetric 3-tensor conditions");
  nurowski->require_subcommand(1);
  auto* nurowski_check = nurowski->add_subcommand("check", "conditions (1)-(3) for a Cartan cubic");
  nurowski_check->add_option("--dim", cfg.dim, "5, 8, 14 or 26")->required();
  nurowski_check->add_flag("--negative-control", cfg.negative_control, "also require a scaled tensor to fail");
  nurowski->add_subcommand("crosscheck", "determinant cubic vs expansion vs Cartan cubic");

  auto* clifford = app.add_subcommand("clifford", "Clifford systems");
  clifford->require_subcommand(1);
  auto* clifford_build = clifford->add_subcommand("build", "build and validate P_0..P_m");
  clifford_build->add_option("--m", cfg.clifford_m, "number of generators minus one")->required();
  clifford_build->add_option("--k", cfg.family.k, "number of irreducible blocks");

  auto* catalog = app.add_subcommand("catalog", "tabulated data");
  catalog->require_subcommand(1);
  catalog->add_subcommand("rank2", "rank-2 symmetric spaces with dimension self-check");
  auto* fkm_table = catalog->add_subcommand("fkm-table", "FKM multiplicity table");
  fkm_table->add_option("--max-k", cfg.max_k);
  fkm_table->add_option("--max-m", cfg.max_m);
  fkm_table->add_flag("--compare-printed", cfg.compare_printed, "compare with the tabulated k <= 5 entries");
  auto* inhom = catalog->add_subcommand("inhom", "FKM inhomogeneity criterion");
  inhom->add_option("--m1", cfg.m1)->required();
  inhom->add_option("--m2", cfg.m2)->required();
  inhom->add_option("--m", cfg.clifford_m, "Clifford parameter (default m1)");
  inhom->add_flag("--degenerate", cfg.degenerate, "P0 P1 P2 P3 = +-Id (relevant for m = 4)");
  catalog->add_subcommand("su3-orbit", "principal orbit of SU(3)/SO(3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto* top = app.get_subcommands().front();
  cfg.command = top->get_name();
  if (!top->get_subcommands().empty()) cfg.subcommand = top->get_subcommands().front()->get_name();
  cfg.family.algebra = isolab::parse_algebra(fa.algebra);
  static const std::map<std::string, OutputFormat> formats = {
      {"json", OutputFormat::json}, {"csv", OutputFormat::csv}, {"poly-text", OutputFormat::poly_text}};
  cfg.format = formats.at(format);

  return isolab::cli::run(cfg, std::cout, std::cerr);
}
