// cmclab: configuration-driven runner for the CMC verification pipeline.
//
//   cmclab run <config.json> [--space=k,t --surface=... --H=... --n=... --refine=...
//                             --out=... --assert-verdict=... --tol.eq2_5=...]
//   cmclab sweep <config.json> [overrides]
//   cmclab verify <fields.json> [--out=dir] [--tol.eqX_Y=...]
//
// Exit codes: 0 pass, 1 usage / configuration / IO error, 2 assertion failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmclab/error.hpp"
#include "cmclab/runner.hpp"

namespace {

// "--key=value" or "--key value" pairs left over after CLI11 parsing.
std::vector<std::pair<std::string, std::string>> split_overrides(std::vector<std::string> args) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--", 0) != 0 || a.size() < 3) {
      throw cmclab::Error(cmclab::ErrorKind::InvalidInput, "unexpected argument '" + a + "'");
    }
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      out.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
    } else if (k + 1 < args.size()) {
      out.emplace_back(a.substr(2), args[k + 1]);
      ++k;
    } else {
      throw cmclab::Error(cmclab::ErrorKind::InvalidInput, "option '" + a + "' needs a value");
    }
  }
  return out;
}

cmclab::RunConfig load_config(const std::string& path, const std::vector<std::string>& extras) {
  cmclab::RunConfig config = cmclab::parse_run_config(cmclab::read_json_file(path));
  for (const auto& [key, value] : split_overrides(extras)) cmclab::apply_override(config, key, value);
  cmclab::validate(config);
  return config;
}

void print_summary(const cmclab::RunResult& r) {
  std::cout << "verdict: " << r.report["verdict"]["label"].get<std::string>() << "\n";
  for (const auto& a : r.report["assertions"]) {
    std::cout << (a["passed"].get<bool>() ? "  pass " : "  FAIL ") << a["name"].get<std::string>()
              << "\n";
  }
  std::cout << (r.exit_code == 0 ? "PASSED" : "FAILED") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmclab: CMC surfaces in E(kappa, tau) - structure equations, classification"};
  app.require_subcommand(1);

  std::string config_path, fields_path;
  auto* run = app.add_subcommand("run", "generate a surface and run the full pipeline");
  run->add_option("config", config_path, "config JSON")->required();
  run->allow_extras();
  auto* sweep = app.add_subcommand("sweep", "write sweep.csv for the configured (kappa, tau, H) triples");
  sweep->add_option("config", config_path, "config JSON")->required();
  sweep->allow_extras();
  auto* verify = app.add_subcommand("verify", "re-verify a saved fields.json");
  verify->add_option("fields", fields_path, "fields JSON")->required();
  verify->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const cmclab::RunConfig config = load_config(config_path, run->remaining());
      const cmclab::RunResult r = cmclab::run(config);
      print_summary(r);
      return r.exit_code;
    }
    if (*sweep) {
      cmclab::RunConfig config = load_config(config_path, sweep->remaining());
      if (config.sweep.empty()) {
        throw cmclab::Error(cmclab::ErrorKind::InvalidInput, "config has no sweep points");
      }
      std::filesystem::create_directories(config.out);
      cmclab::write_text_file(config.out / "sweep.csv", cmclab::sweep_csv(config));
      std::cout << "wrote " << (config.out / "sweep.csv").string() << "\n";
      return 0;
    }
    if (*verify) {
      std::map<std::string, double> tol;
      std::filesystem::path out;
      cmclab::RunConfig scratch;
      for (const auto& [key, value] : split_overrides(verify->remaining())) {
        if (key == "out") {
          out = value;
        } else if (key.rfind("tol.", 0) == 0) {
          cmclab::apply_override(scratch, key, value);
        } else {
          throw cmclab::Error(cmclab::ErrorKind::InvalidInput, "unknown option --" + key);
        }
      }
      tol = scratch.tol;
      const cmclab::RunResult r = cmclab::verify_fields(cmclab::read_json_file(fields_path), tol);
      if (!out.empty()) {
        std::filesystem::create_directories(out);
        cmclab::write_text_file(out / "report.json", cmclab::dump(r.report));
      } else {
        std::cout << cmclab::dump(r.report);
      }
      print_summary(r);
      return r.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "cmclab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
