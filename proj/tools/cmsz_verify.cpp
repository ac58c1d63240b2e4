// Command-line driver for the verification suites.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cmsz/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the integral group, its finite reductions and the appendix search."};
  app.set_version_flag("--version", cmsz::kToolkitVersion);

  cmsz::RunConfig cfg;
  bool json = false;
  app.add_option("--padic-precision", cfg.padic_precision, "bits of 2-adic precision")
      ->check(CLI::Range(16U, 4096U));
  app.add_option("--ball-radius", cfg.ball_radius, "radius of the transitivity ball")->check(CLI::Range(0U, 6U));
  app.add_option("--threads", cfg.threads, "worker threads (0 = all)");
  app.add_flag("--json", json, "emit the JSON report");
  app.add_option("--dump-groups", cfg.dump_groups, "directory for sorted element lists of the finite groups");

  std::string command;
  for (const auto& name : cmsz::suite_commands())
    app.add_subcommand(name, "run the " + name + " suite")->fallthrough()->callback([&, name] { command = name; });
  app.add_subcommand("verify-all", "run every suite")->fallthrough()->callback([&] { command = "verify-all"; });
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto suites = cmsz::run_suites(command, cfg);
    if (json)
      std::cout << cmsz::report_json(suites, cfg).dump(2) << "\n";
    else
      std::cout << cmsz::report_text(suites);
    return cmsz::all_passed(suites) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
