#include "commands.hpp"

#include "morsecup/errors.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace morsecup;
using namespace morsecup::cli;

int main(int argc, char** argv) {
  CLI::App app{"Local Morse cohomology, cup products and cup-length for quadratic flows"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path, json_out, format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ring;
  bool mutate = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "overrides the config seed and MORSE_SEED");
    sub->add_option("--ring", ring, "coefficient ring")->check(CLI::IsMember({"z2", "z"}));
    sub->add_option("--json-out", json_out, "also write the JSON report here");
    sub->add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "text"}));
  };
  auto* complex = app.add_subcommand("complex", "complexes and cohomology of every datum");
  auto* cuplength = app.add_subcommand("cuplength", "relative and absolute cup-length");
  auto* verify = app.add_subcommand("verify", "algebraic identities, oracle agreement and sign rules");
  for (auto* sub : {complex, cuplength, verify}) add_common(sub);
  verify->add_flag("--mutate-cup-entry", mutate, "corrupt one cup-table entry before checking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InvalidInput);
  }

  try {
    const RunConfig cfg = load_config(config_path, Overrides{seed, ring});
    Report report;
    if (*complex)
      report = cmd_complex(cfg);
    else if (*cuplength)
      report = cmd_cuplength(cfg);
    else
      report = cmd_verify(cfg, VerifyOptions{.mutate_cup_entry = mutate});

    if (!json_out.empty()) emit_report(report, Format::Json, json_out);
    emit_report(report, parse_format(format), "");
    if (!report.passed()) {
      for (const auto& c : report.checks)
        if (!c.ok) std::cerr << "check failed: " << c.module << "/" << c.name << " " << c.detail.dump() << "\n";
      return static_cast<int>(ExitCode::Invariant);
    }
    return static_cast<int>(ExitCode::Ok);
  } catch (const MorseError& e) {
    std::cerr << "morsecup: " << e.what() << "\n";
    return static_cast<int>(exit_code_for(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "morsecup: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Invariant);
  }
}
