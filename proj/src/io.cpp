#include "cmclab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json scalars(const ScalarField& f) {
  Json out = Json::array();
  for (double x : f.values()) out.push_back(number(x));
  return out;
}

Json reals(const ComplexField& f) {
  Json out = Json::array();
  for (const Complex& z : f.values()) out.push_back(number(z.real()));
  return out;
}

Json imags(const ComplexField& f) {
  Json out = Json::array();
  for (const Complex& z : f.values()) out.push_back(number(z.imag()));
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

double as_double(const Json& j) {
  if (j.is_null()) return std::nan("");
  if (!j.is_number()) throw Error(ErrorKind::InvalidInput, "expected a number");
  return j.get<double>();
}

void read_scalars(const Json& j, const char* key, ScalarField& f) {
  const Json& a = require(j, key);
  if (!a.is_array() || a.size() != f.values().size()) {
    throw Error(ErrorKind::InvalidInput, std::string("array '") + key + "' has the wrong length");
  }
  for (std::size_t k = 0; k < a.size(); ++k) f.values()[k] = as_double(a[k]);
}

void read_complex(const Json& j, const char* re, const char* im, ComplexField& f) {
  const Json& a = require(j, re);
  const Json& b = require(j, im);
  const std::size_t n = f.values().size();
  if (!a.is_array() || !b.is_array() || a.size() != n || b.size() != n) {
    throw Error(ErrorKind::InvalidInput, std::string("array '") + re + "' has the wrong length");
  }
  for (std::size_t k = 0; k < n; ++k) f.values()[k] = Complex(as_double(a[k]), as_double(b[k]));
}

}  // namespace

Json to_json(const SpaceParams& space) {
  return Json{{"kappa", space.kappa()},
              {"tau", space.tau()},
              {"b", space.b()},
              {"geometry", std::string(space.tag())},
              {"chart_r2_max", number(space.chart_radius2_max())}};
}

Json to_json(const Grid& g) {
  return Json{{"n_u", g.n_u}, {"n_v", g.n_v}, {"h_u", g.h_u},
              {"h_v", g.h_v}, {"u0", g.u0},   {"v0", g.v0}};
}

Json to_json(const DataPatch& d) {
  return Json{{"space", to_json(d.space)},
              {"H", d.H},
              {"H_spread", d.H_spread},
              {"grid", to_json(d.grid)},
              {"lambda", scalars(d.lambda)},
              {"p_re", reals(d.p)},
              {"p_im", imags(d.p)},
              {"A_re", reals(d.A)},
              {"A_im", imags(d.A)},
              {"nu", scalars(d.nu)}};
}

Json to_json(const ARField& f) {
  Json mask = Json::array();
  for (auto m : f.zero_mask.values()) mask.push_back(static_cast<int>(m));
  return Json{{"grid", to_json(f.Q.grid())},
              {"q_floor", f.q_floor},
              {"Q_re", reals(f.Q)},
              {"Q_im", imags(f.Q)},
              {"q", scalars(f.q)},
              {"mask", std::move(mask)}};
}

std::string equation_key(const std::string& id) {
  std::string out = "eq" + id;
  for (char& c : out) {
    if (c == '.') c = '_';
  }
  return out;
}

Json to_json(const ResidualReport& r) {
  Json entries = Json::object();
  for (const ResidualEntry& e : r.entries) {
    Json je{{"differential", e.differential},
            {"applicable", e.applicable},
            {"sup", number(e.sup)},
            {"mean", number(e.mean)},
            {"rel_sup", number(e.rel_sup)},
            {"order", e.order ? number(*e.order) : Json(nullptr)}};
    if (!e.note.empty()) je["note"] = e.note;
    entries[equation_key(e.id)] = std::move(je);
  }
  return Json{{"h", r.h}, {"H_spread", r.H_spread}, {"residuals", std::move(entries)}};
}

Json to_json(const BoundConstants& b) {
  return Json{{"a4", b.a4},
              {"a6", b.a6},
              {"b", b.b},
              {"thm41_strict", b.hypothesis.strict},
              {"thm41_relaxed", b.hypothesis.relaxed},
              {"c_lower", b.has_c_lower ? Json(b.c_lower) : Json(nullptr)},
              {"q_lower", b.has_q_lower ? Json(b.q_lower) : Json(nullptr)},
              {"q_upper", b.q_upper},
              {"H2_kappa_3tau2", b.h2_kappa_3tau2}};
}

Json to_json(const ClassificationVerdict& v) {
  const Hypotheses& h = v.hypotheses;
  Json hyp{{"residuals_checked", h.residuals_checked},
           {"residuals_ok", h.residuals_ok},
           {"residual_max_rel", number(h.residual_max_rel)},
           {"g0_4H2_kappa", h.g0},
           {"K_min", number(h.K_min)},
           {"K_max", number(h.K_max)},
           {"K_sign", h.K_sign},
           {"q_min", number(h.q_min)},
           {"q_max", number(h.q_max)},
           {"q_constant", h.q_constant},
           {"q_zero", h.q_zero},
           {"nu_min", number(h.nu_min)},
           {"nu_max", number(h.nu_max)},
           {"nu_constant", h.nu_constant},
           {"nu_zero", h.nu_zero},
           {"nu2_one", h.nu2_one},
           {"Ke_mean", number(h.Ke_mean)},
           {"Ke_constant", h.Ke_constant},
           {"Ke_minus_tau2", h.Ke_minus_tau2},
           {"eq5_2_residual", number(h.eq52_residual)},
           {"thm31_K_nonnegative", h.thm31},
           {"thm41_K_nonpositive", h.thm41_K},
           {"thm41_strict", h.thm41.strict},
           {"thm41_relaxed", h.thm41.relaxed}};
  return Json{{"label", std::string(to_string(v.label))},
              {"hypotheses", std::move(hyp)},
              {"notes", v.notes}};
}

Json to_json(const DichotomyResult& r) {
  return Json{{"conclusion", std::string(to_string(r.conclusion))},
              {"hypothesis_ok", r.hypothesis_ok},
              {"pde_ok", r.pde_ok},
              {"gradient_ok", r.gradient_ok},
              {"pde_residual", number(r.pde_residual)},
              {"gradient_excess", number(r.gradient_excess)},
              {"zero_nodes", r.zero_nodes},
              {"nonzero_nodes", r.nonzero_nodes},
              {"notes", r.notes}};
}

DataPatch data_patch_from_json(const Json& j) {
  try {
    const Json& js = require(j, "space");
    const int kappa = require(js, "kappa").get<int>();
    const double tau = require(js, "tau").get<double>();
    const double r2 = js.contains("chart_r2_max") && js["chart_r2_max"].is_number()
                          ? js["chart_r2_max"].get<double>()
                          : 4.0;
    const SpaceParams space = (kappa == 0 && tau == 0.0) ? SpaceParams::euclidean()
                                                         : make_space(kappa, tau, r2);
    const Json& jg = require(j, "grid");
    Grid grid;
    grid.n_u = require(jg, "n_u").get<int>();
    grid.n_v = require(jg, "n_v").get<int>();
    grid.h_u = require(jg, "h_u").get<double>();
    grid.h_v = require(jg, "h_v").get<double>();
    grid.u0 = require(jg, "u0").get<double>();
    grid.v0 = require(jg, "v0").get<double>();
    if (grid.n_u < 1 || grid.n_v < 1 || !(grid.h_u > 0.0)) {
      throw Error(ErrorKind::InvalidInput, "bad grid");
    }
    DataPatch d = make_data_patch(space, require(j, "H").get<double>(), grid);
    if (j.contains("H_spread")) d.H_spread = as_double(j["H_spread"]);
    read_scalars(j, "lambda", d.lambda);
    read_complex(j, "p_re", "p_im", d.p);
    read_complex(j, "A_re", "A_im", d.A);
    read_scalars(j, "nu", d.nu);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cmclab
