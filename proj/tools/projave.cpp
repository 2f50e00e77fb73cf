#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "projave/convex/builders.hpp"
#include "projave/convex/projection.hpp"
#include "projave/errors.hpp"
#include "projave/harness/commands.hpp"

namespace {

using namespace projave;

// Exit codes: 0 all rows pass, 1 some row failed, 2 usage or config error.
int emit(const harness::Report& report, const std::string& out, harness::Format format) {
  const auto text = harness::render(report, format);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out);
    if (!file) {
      throw ConfigError("cannot write " + out);
    }
    file << text;
  }
  std::size_t failed = 0;
  for (const auto& r : report.rows) {
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL row " << r.row << " (" << r.case_name << "): " << r.message << '\n';
    }
  }
  std::cerr << report.header.command << ": " << report.rows.size() - failed << "/"
            << report.rows.size() << " rows pass\n";
  return failed == 0 ? 0 : 1;
}

int validate_polytope(const std::string& path) {
  const auto p = convex::read_polytope(path);
  const auto s = convex::surface_area_measure(p);
  std::cout << "fixture " << path << ": valid polytope in R^" << p.dim() << "\n"
            << "  vertices: " << p.vertices().size() << "\n"
            << "  facets: " << p.facets().size() << "\n"
            << "  surface area: " << s.total_mass() << "\n"
            << "  origin-symmetric surface measure: " << (s.even() ? "yes" : "no") << "\n";
  try {
    std::cout << "  volume: " << convex::volume(p) << "\n";
  } catch (const DomainError& e) {
    std::cout << "  volume: unavailable (" << e.what() << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection-averaged Sobolev functionals: verification runner"};
  app.require_subcommand(1);

  struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
  };
  std::map<std::string, RunArgs> run_args;
  std::map<std::string, CLI::App*> run_apps;
  for (const auto& name : harness::command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " verification suite");
    auto& a = run_args[name];
    sub->add_option("--config", a.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", a.seed, "seed (overrides the config)");
    sub->add_option("--out", a.out, "write the report here instead of stdout");
    sub->add_option("--format", a.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    run_apps[name] = sub;
  }

  std::string fixture;
  auto* validate = app.add_subcommand("validate-polytope", "check a polytope fixture file");
  validate->add_option("--fixture", fixture, "fixture path")->required()->check(CLI::ExistingFile);

  std::string report_path;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "re-run a report from its header and compare rows");
  replay->add_option("--report", report_path, "report file (csv or json)")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "also write the re-run report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      return validate_polytope(fixture);
    }
    if (replay->parsed()) {
      const auto original = harness::read_report(report_path);
      const auto result = harness::replay(original);
      if (!replay_out.empty()) {
        std::ofstream file(replay_out);
        file << harness::render(result.rerun, harness::Format::csv);
      }
      for (const auto& d : result.differences) {
        std::cout << "DIFF " << d << '\n';
      }
      std::cout << (result.identical ? "identical" : "different") << ": "
                << result.rerun.rows.size() << " rows re-run from the header of " << report_path
                << '\n';
      return result.identical ? 0 : 1;
    }
    for (const auto& [name, sub] : run_apps) {
      if (sub->parsed()) {
        const auto& a = run_args[name];
        const auto report = harness::run_config_file(name, a.config, a.seed);
        return emit(report, a.out, harness::parse_format(a.format));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
