#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmclab/io.hpp"

namespace cmclab {

enum class SurfaceKind { Slice, Cylinder, SphereData, SphereImmersed, SFamilyParams, SyntheticDlnq };

std::string_view to_string(SurfaceKind s);
SurfaceKind parse_surface(std::string_view name);

struct SweepPoint {
  int kappa = 0;
  double tau = 0.0;
  double H = 0.0;
};

// Configuration of one experiment. `n` is the node count of the coarsest
// level along the long direction; level k uses (n - 1) 2^k + 1 nodes.
struct RunConfig {
  int kappa = -1;
  double tau = 0.0;
  SurfaceKind surface = SurfaceKind::SphereData;
  double H = 1.0;
  int n = 201;
  int refine = 1;
  std::filesystem::path out = "cmclab_out";
  std::optional<std::string> assert_verdict;
  std::map<std::string, double> tol;  // "eq2_5" -> sup threshold at the finest level
  std::optional<double> min_order;    // required order of every differential entry
  // generator extents
  double length = 1.0;        // cylinder curve length
  double fiber = 0.1;         // cylinder fiber extent
  double s_extent = 2.0;      // sphere data s range [-s_extent, s_extent]
  double u_extent = 1.0;      // immersed sphere u range [-u_extent, u_extent]
  double extent = 0.5;        // slice half-width
  std::vector<SweepPoint> sweep;
};

// Reads the config object; throws InvalidInput on bad values.
RunConfig parse_run_config(const Json& j);
// Applies "--key=value" overrides (--space=kappa,tau --surface --H --n
// --refine --out --assert-verdict --min-order --tol.eqX_Y). Throws
// InvalidInput on unknown keys.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);
// Checks n >= 5, refine >= 1 and positive tolerances.
void validate(const RunConfig& config);

Json to_json(const RunConfig& config);

struct RunResult {
  int exit_code = 0;  // 0 pass, 2 assertion failure
  Json report;
  std::vector<std::string> failures;
};

// Runs the pipeline and writes report.json, fields.json, residuals.csv and
// (when configured) sweep.csv into config.out.
RunResult run(const RunConfig& config);

// One CSV row per sweep point: hypothesis flags, bounds and the verdict of
// the configured surface at that point.
std::string sweep_csv(const RunConfig& config);

// Re-verifies a saved DataPatch; tolerances as in RunConfig::tol.
RunResult verify_fields(const Json& fields, const std::map<std::string, double>& tol);

}  // namespace cmclab
