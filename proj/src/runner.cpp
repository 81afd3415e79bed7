#include "cmclab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cmclab/canonical.hpp"
#include "cmclab/error.hpp"

namespace cmclab {

namespace {

constexpr SurfaceKind kSurfaces[] = {SurfaceKind::Slice,          SurfaceKind::Cylinder,
                                     SurfaceKind::SphereData,     SurfaceKind::SphereImmersed,
                                     SurfaceKind::SFamilyParams,  SurfaceKind::SyntheticDlnq};

bool known_tol_key(const std::string& key) {
  static const char* keys[] = {"eq2_2", "eq2_3", "eq2_4", "eq2_5", "eq2_6", "eq2_7",
                               "eq2_8", "eq2_9", "eq2_10", "holomorphicity"};
  for (const char* k : keys) {
    if (key == k) return true;
  }
  return false;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != value.size()) {
    throw Error(ErrorKind::InvalidInput, "--" + key + ": not a number: '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  if (x != std::floor(x)) throw Error(ErrorKind::InvalidInput, "--" + key + ": not an integer");
  return static_cast<int>(x);
}

SpaceParams space_of(int kappa, double tau) {
  if (kappa == 0 && tau == 0.0) return SpaceParams::euclidean();
  return make_space(kappa, tau);
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Generated data of one refinement level.
struct Level {
  DataPatch data;
  std::optional<ARField> ar;  // prescribed Q for synthetic data
};

int level_nodes(const RunConfig& c, int k) { return (c.n - 1) * (1 << k) + 1; }

Level make_level(const RunConfig& c, const SpaceParams& space, double H, int k) {
  const int n = level_nodes(c, k);
  switch (c.surface) {
    case SurfaceKind::SphereData:
      return {gen_rotational_sphere_data(space, H, -c.s_extent, c.s_extent, n), std::nullopt};
    case SurfaceKind::Cylinder:
      return {extract_data(gen_cylinder(space, H, c.length, c.fiber, n).immersed), std::nullopt};
    case SurfaceKind::SphereImmersed: {
      if (space.tau() != 0.0) {
        throw Error(ErrorKind::InvalidInput, "sphere_immersed needs tau = 0");
      }
      const double h = 2.0 * c.u_extent / (n - 1);
      return {extract_data(gen_rotational_sphere_immersed(space.kappa(), H, n, h)), std::nullopt};
    }
    case SurfaceKind::Slice:
      return {extract_data(gen_slice(space.kappa(), c.extent, n)), std::nullopt};
    case SurfaceKind::SyntheticDlnq: {
      SyntheticDlnq s = make_synthetic_dlnq(0.2 / (n - 1));
      return {std::move(s.data), std::move(s.ar)};
    }
    case SurfaceKind::SFamilyParams:
      break;
  }
  throw Error(ErrorKind::InvalidInput, "surface has no data patch");
}

Json ar_summary(const ARField& f, const DataPatch& d) {
  const Range q = field_range(f.q);
  const bool constant = q.spread() <= std::max(1e-8, 1e-6 * std::abs(q.mean));
  Json out{{"q_floor", f.q_floor},
           {"q_min", q.min},
           {"q_max", q.max},
           {"q_mean", q.mean},
           {"q_spread", q.spread()},
           {"q_const", constant ? Json(q.mean) : Json(nullptr)},
           {"masked_fraction", f.masked_fraction()},
           {"holomorphicity_sup", holomorphicity_residual(f, d)}};
  try {
    out["eq2_10"] = Json{{"sup", check_dln_q(f, d)}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllMasked) throw;
    out["eq2_10"] = Json{{"sup", nullptr}, {"status", "AllMasked"}};
  }
  return out;
}

Json bounds_json(const SpaceParams& space, double H) {
  if (space.degenerate()) return nullptr;
  return to_json(bound_constants(space, H));
}

struct Checker {
  Json list = Json::array();
  std::vector<std::string> failures;

  void add(const std::string& name, bool passed, double value, double threshold) {
    list.push_back(Json{{"name", name},
                        {"passed", passed},
                        {"value", std::isfinite(value) ? Json(value) : Json(nullptr)},
                        {"threshold", threshold}});
    if (!passed) failures.push_back(name);
  }
};

void check_tolerances(Checker& chk, const std::map<std::string, double>& tol,
                      const ResidualReport* finest, const Json& ar) {
  for (const auto& [key, threshold] : tol) {
    double value = std::nan("");
    if (key == "holomorphicity") {
      value = ar.value("holomorphicity_sup", std::nan(""));
    } else if (key == "eq2_10") {
      const Json& e = ar["eq2_10"]["sup"];
      if (e.is_number()) value = e.get<double>();
    } else if (finest != nullptr) {
      for (const ResidualEntry& e : finest->entries) {
        if (equation_key(e.id) == key && e.applicable) value = e.sup;
      }
    }
    chk.add("tol." + key, std::isfinite(value) && value <= threshold, value, threshold);
  }
}

}  // namespace

std::string_view to_string(SurfaceKind s) {
  switch (s) {
    case SurfaceKind::Slice: return "slice";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::SphereData: return "sphere_data";
    case SurfaceKind::SphereImmersed: return "sphere_immersed";
    case SurfaceKind::SFamilyParams: return "sfamily_params";
    case SurfaceKind::SyntheticDlnq: return "synthetic_dlnq";
  }
  return "sphere_data";
}

SurfaceKind parse_surface(std::string_view name) {
  for (SurfaceKind s : kSurfaces) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::InvalidInput, "unknown surface '" + std::string(name) + "'");
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "space") {
    const auto comma = value.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "--space expects kappa,tau");
    }
    c.kappa = parse_int(key, value.substr(0, comma));
    c.tau = parse_double(key, value.substr(comma + 1));
  } else if (key == "surface") {
    c.surface = parse_surface(value);
  } else if (key == "H") {
    c.H = parse_double(key, value);
  } else if (key == "n") {
    c.n = parse_int(key, value);
  } else if (key == "refine") {
    c.refine = parse_int(key, value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "assert-verdict" || key == "assert_verdict") {
    parse_label(value);
    c.assert_verdict = value;
  } else if (key == "min-order" || key == "min_order") {
    c.min_order = parse_double(key, value);
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string eq = key.substr(4);
    if (!known_tol_key(eq)) throw Error(ErrorKind::InvalidInput, "unknown tolerance '" + eq + "'");
    c.tol[eq] = parse_double(key, value);
  } else if (key == "length") {
    c.length = parse_double(key, value);
  } else if (key == "fiber") {
    c.fiber = parse_double(key, value);
  } else if (key == "s_extent") {
    c.s_extent = parse_double(key, value);
  } else if (key == "u_extent") {
    c.u_extent = parse_double(key, value);
  } else if (key == "extent") {
    c.extent = parse_double(key, value);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown option --" + key);
  }
}

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "space") {
        c.kappa = value.at("kappa").get<int>();
        c.tau = value.at("tau").get<double>();
      } else if (key == "surface") {
        c.surface = parse_surface(value.get<std::string>());
      } else if (key == "H") {
        c.H = value.get<double>();
      } else if (key == "n") {
        c.n = value.get<int>();
      } else if (key == "refine") {
        c.refine = value.get<int>();
      } else if (key == "out") {
        c.out = value.get<std::string>();
      } else if (key == "assert_verdict") {
        parse_label(value.get<std::string>());
        c.assert_verdict = value.get<std::string>();
      } else if (key == "min_order") {
        c.min_order = value.get<double>();
      } else if (key == "tol") {
        for (const auto& [eq, t] : value.items()) {
          if (!known_tol_key(eq)) {
            throw Error(ErrorKind::InvalidInput, "unknown tolerance '" + eq + "'");
          }
          c.tol[eq] = t.get<double>();
        }
      } else if (key == "params") {
        for (const auto& [p, v] : value.items()) {
          const double x = v.get<double>();
          if (p == "length") c.length = x;
          else if (p == "fiber") c.fiber = x;
          else if (p == "s_extent") c.s_extent = x;
          else if (p == "u_extent") c.u_extent = x;
          else if (p == "extent") c.extent = x;
          else throw Error(ErrorKind::InvalidInput, "unknown generator parameter '" + p + "'");
        }
      } else if (key == "sweep") {
        if (value.is_array()) {
          for (const Json& p : value) {
            c.sweep.push_back({p.at("kappa").get<int>(), p.at("tau").get<double>(),
                               p.at("H").get<double>()});
          }
        } else {
          for (const Json& k : value.at("kappa")) {
            for (const Json& t : value.at("tau")) {
              for (const Json& h : value.at("H")) {
                c.sweep.push_back({k.get<int>(), t.get<double>(), h.get<double>()});
              }
            }
          }
        }
      } else if (key == "seed") {
        // accepted for reproducibility records; the pipeline is deterministic
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  if (c.n < 5) throw Error(ErrorKind::InvalidInput, "n must be at least 5");
  if (c.refine < 1 || c.refine > 8) throw Error(ErrorKind::InvalidInput, "refine must be in [1, 8]");
  for (const auto& [key, t] : c.tol) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance " + key + " must be positive");
  }
  if (c.min_order && !(*c.min_order > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "min_order must be positive");
  }
  if (c.min_order && c.refine < 2 && c.surface != SurfaceKind::SFamilyParams) {
    throw Error(ErrorKind::InvalidInput, "min_order needs refine >= 2");
  }
  if (!(c.length > 0.0 && c.fiber > 0.0 && c.s_extent > 0.0 && c.u_extent > 0.0 && c.extent > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "generator extents must be positive");
  }
}

Json to_json(const RunConfig& c) {
  Json tol = Json::object();
  for (const auto& [k, t] : c.tol) tol[k] = t;
  Json sweep = Json::array();
  for (const SweepPoint& p : c.sweep) sweep.push_back(Json{{"kappa", p.kappa}, {"tau", p.tau}, {"H", p.H}});
  return Json{{"space", Json{{"kappa", c.kappa}, {"tau", c.tau}}},
              {"surface", std::string(to_string(c.surface))},
              {"H", c.H},
              {"n", c.n},
              {"refine", c.refine},
              {"assert_verdict", c.assert_verdict ? Json(*c.assert_verdict) : Json(nullptr)},
              {"min_order", c.min_order ? Json(*c.min_order) : Json(nullptr)},
              {"tol", std::move(tol)},
              {"params", Json{{"length", c.length},
                              {"fiber", c.fiber},
                              {"s_extent", c.s_extent},
                              {"u_extent", c.u_extent},
                              {"extent", c.extent}}},
              {"sweep", std::move(sweep)}};
}

RunResult run(const RunConfig& c) {
  validate(c);
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + c.out.string() + ": " + ec.message());

  const SpaceParams space = c.surface == SurfaceKind::SyntheticDlnq ? make_space(-1, 0.0)
                                                                    : space_of(c.kappa, c.tau);
  const double H = c.surface == SurfaceKind::SyntheticDlnq ? 1.0 : c.H;
  Json report{{"config", to_json(c)}, {"space", to_json(space)}, {"H", H}};
  report["bounds"] = bounds_json(space, H);
  Checker chk;
  ClassificationVerdict verdict;

  if (c.surface == SurfaceKind::SFamilyParams) {
    const SFamilyParams p = s_family_params(space, H);
    verdict = classify_params(p);
    report["sfamily"] = Json{{"nu2", p.nu2}, {"K", p.K}, {"Ke", p.Ke}};
    report["levels"] = Json::array();
    check_tolerances(chk, c.tol, nullptr, Json::object());
    write_text_file(c.out / "residuals.csv", residuals_csv({}));
  } else {
    std::vector<ResidualReport> reports;
    std::optional<Level> finest;
    std::optional<ARField> finest_ar;
    for (int k = 0; k < c.refine; ++k) {
      Level lv = make_level(c, space, H, k);
      ARField ar = lv.ar ? std::move(*lv.ar) : compute_Q(lv.data);
      reports.push_back(verify_all(lv.data, ar));
      finest = std::move(lv);
      finest_ar = std::move(ar);
    }
    attach_orders(reports);
    Json levels = Json::array();
    for (const ResidualReport& r : reports) levels.push_back(to_json(r));
    report["levels"] = std::move(levels);
    report["ar"] = ar_summary(*finest_ar, finest->data);
    verdict = classify_patch(finest->data, *finest_ar);
    check_tolerances(chk, c.tol, &reports.back(), report["ar"]);
    if (c.min_order) {
      for (const ResidualEntry& e : reports.back().entries) {
        if (!e.differential || !e.applicable || !e.order) continue;
        chk.add("order." + equation_key(e.id), *e.order >= *c.min_order, *e.order, *c.min_order);
      }
    }
    write_text_file(c.out / "fields.json",
                    dump(Json{{"data", to_json(finest->data)}, {"ar", to_json(*finest_ar)}}));
    write_text_file(c.out / "residuals.csv", residuals_csv(reports));
  }

  report["verdict"] = to_json(verdict);
  if (c.assert_verdict) {
    const bool ok = std::string(to_string(verdict.label)) == *c.assert_verdict;
    chk.list.push_back(Json{{"name", "verdict"},
                            {"passed", ok},
                            {"value", std::string(to_string(verdict.label))},
                            {"threshold", *c.assert_verdict}});
    if (!ok) chk.failures.push_back("verdict");
  }
  if (!c.sweep.empty()) write_text_file(c.out / "sweep.csv", sweep_csv(c));

  RunResult result;
  report["assertions"] = chk.list;
  report["passed"] = chk.failures.empty();
  result.failures = chk.failures;
  result.exit_code = chk.failures.empty() ? 0 : 2;
  result.report = report;
  write_text_file(c.out / "report.json", dump(report));
  return result;
}

std::string sweep_csv(const RunConfig& c) {
  std::ostringstream out;
  out << "kappa,tau,H,geometry,b,a4,a6,thm41_strict,thm41_relaxed,H2_kappa_3tau2,c_lower,"
         "q_lower,q_upper,verdict\n";
  for (const SweepPoint& p : c.sweep) {
    out << p.kappa << ',' << fmt(p.tau) << ',' << fmt(p.H) << ',';
    std::string columns = ",,,,,,,,,,";  // geometry ... q_upper
    std::string verdict;
    try {
      const SpaceParams space = space_of(p.kappa, p.tau);
      std::ostringstream row;
      row << space.tag() << ',';
      if (space.degenerate()) {
        row << "0,,,,,,,,,";
      } else {
        const BoundConstants b = bound_constants(space, p.H);
        row << fmt(b.b) << ',' << fmt(b.a4) << ',' << fmt(b.a6) << ',' << b.hypothesis.strict << ','
            << b.hypothesis.relaxed << ',' << fmt(b.h2_kappa_3tau2) << ','
            << (b.has_c_lower ? fmt(b.c_lower) : "") << ','
            << (b.has_q_lower ? fmt(b.q_lower) : "") << ',' << fmt(b.q_upper) << ',';
      }
      columns = row.str();
      if (c.surface == SurfaceKind::SFamilyParams) {
        verdict = to_string(classify_params(s_family_params(space, p.H)).label);
      } else {
        Level lv = make_level(c, space, p.H, 0);
        ARField ar = lv.ar ? std::move(*lv.ar) : compute_Q(lv.data);
        verdict = to_string(classify_patch(lv.data, ar).label);
      }
    } catch (const Error& e) {
      verdict = "error:" + std::string(to_string(e.kind()));
    }
    out << columns << verdict << '\n';
  }
  return out.str();
}

RunResult verify_fields(const Json& fields, const std::map<std::string, double>& tol) {
  const Json& jd = fields.contains("data") ? fields.at("data") : fields;
  const DataPatch d = data_patch_from_json(jd);
  const ARField ar = compute_Q(d);
  const ResidualReport rep = verify_all(d, ar);
  Json report{{"space", to_json(d.space)}, {"H", d.H}};
  report["levels"] = Json::array({to_json(rep)});
  report["ar"] = ar_summary(ar, d);
  report["bounds"] = bounds_json(d.space, d.H);
  report["verdict"] = to_json(classify_patch(d, ar));
  Checker chk;
  for (const auto& [key, t] : tol) {
    if (!known_tol_key(key)) throw Error(ErrorKind::InvalidInput, "unknown tolerance '" + key + "'");
  }
  check_tolerances(chk, tol, &rep, report["ar"]);
  report["assertions"] = chk.list;
  report["passed"] = chk.failures.empty();
  RunResult result;
  result.failures = chk.failures;
  result.exit_code = chk.failures.empty() ? 0 : 2;
  result.report = std::move(report);
  return result;
}

}  // namespace cmclab
