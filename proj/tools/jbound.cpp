#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "jbound/cli/commands.hpp"

namespace {

using jbound::cli::CommandResult;
using jbound::cli::json;

int emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out || !(out << text)) {
    std::cerr << "jbound: cannot write '" << out_path << "'\n";
    return jbound::cli::kExitResource;
  }
  return 0;
}

json error_report(const std::string& kind, const std::string& message) {
  return {{"schema_version", jbound::cli::kSchemaVersion},
          {"tool", "jbound"},
          {"tool_version", jbound::cli::kToolVersion},
          {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified height bounds for integral points on modular curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", jbound::cli::kToolVersion);

  std::string config_path;
  std::string out_path;
  std::optional<long> precision;
  std::optional<long> terms;
  std::string theorem = "all";
  std::string what;
  std::string suite = "all";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--precision", precision, "working precision in bits");
    sub->add_option("--terms", terms, "truncation order in units of q^(1/(12N^2))");
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
  };
  CLI::App* bound = app.add_subcommand("bound", "height bounds");
  common(bound);
  bound->add_option("--theorem", theorem, "1, 2, 3, pipeline, lambda1 or all");
  CLI::App* inspect = app.add_subcommand("inspect", "group, cusp, unit and Siegel-function data");
  common(inspect);
  inspect->add_option("what", what, "orbits, cusps, units or siegel")->required();
  CLI::App* verify = app.add_subcommand("verify", "self-verification suites");
  common(verify);
  verify->add_option("--suite", suite, "all, product, coeff-bounds, numeric, divisors or bounds-oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : jbound::cli::kExitInvalid;
  }

  std::string kind;
  std::string message;
  int code = 0;
  try {
    jbound::cli::Config config = jbound::cli::load_config(config_path);
    jbound::cli::apply_overrides(config, precision, terms);
    CommandResult r;
    if (bound->parsed()) {
      r = jbound::cli::cmd_bound(config, theorem);
    } else if (inspect->parsed()) {
      r = jbound::cli::cmd_inspect(config, what);
    } else {
      r = jbound::cli::cmd_verify(config, suite);
    }
    const int wrote = emit(r.report, out_path);
    return wrote != 0 ? wrote : r.exit_code;
  } catch (const jbound::invalid_input& e) {
    kind = "invalid_input";
    message = e.what();
    code = jbound::cli::kExitInvalid;
  } catch (const jbound::precondition_error& e) {
    kind = "precondition_error";
    message = e.what();
    code = jbound::cli::kExitInvalid;
  } catch (const jbound::resource_error& e) {
    kind = "resource_error";
    message = e.what();
    code = jbound::cli::kExitResource;
  } catch (const jbound::consistency_error& e) {
    kind = "consistency_error";
    message = e.what();
    code = jbound::cli::kExitCheckFailure;
  } catch (const std::bad_alloc&) {
    kind = "resource_error";
    message = "out of memory";
    code = jbound::cli::kExitResource;
  }
  std::cerr << "jbound: " << kind << ": " << message << "\n";
  emit(error_report(kind, message), out_path);
  return code;
}
