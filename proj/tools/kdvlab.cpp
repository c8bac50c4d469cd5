// kdvlab: finite-difference experiments for u_t - 1.5 u u_x + u_xxx = 0.
#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kdv/commands.hpp"
#include "kdv/config.hpp"
#include "kdv/csv.hpp"

namespace {

struct SubcommandArgs {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

CLI::App* add_subcommand(CLI::App& app, const std::string& name, const std::string& help,
                         SubcommandArgs& args) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--config", args.config_path, "key = value configuration file");
  for (const auto& key : kdv::cli::config_keys()) {
    sub->add_option("--" + key, args.overrides[key], "override '" + key + "'");
  }
  return sub;
}

kdv::cli::RunConfig load(const CLI::App& sub, const SubcommandArgs& args) {
  std::string text;
  if (!args.config_path.empty()) text = kdv::cli::read_text_file(args.config_path);
  std::vector<kdv::cli::Override> overrides;
  for (const auto& key : kdv::cli::config_keys()) {
    if (sub.count("--" + key) > 0) overrides.emplace_back(key, args.overrides.at(key));
  }
  return kdv::cli::parse_config(text, overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kdvlab - explicit and Crank-Nicolson solvers for the KdV equation"};
  app.require_subcommand(1);

  using Command = std::function<int(const kdv::cli::RunConfig&)>;
  struct Entry {
    CLI::App* sub;
    SubcommandArgs args;
    Command run;
  };
  std::vector<Entry> entries(4);
  entries[0].sub = add_subcommand(app, "run", "time-step and write snapshot CSVs", entries[0].args);
  entries[0].run = [](const auto& cfg) { return kdv::cli::cmd_run(cfg, std::cout); };
  entries[1].sub = add_subcommand(app, "scan", "amplification-factor stability scan", entries[1].args);
  entries[1].run = [](const auto& cfg) { return kdv::cli::cmd_scan(cfg, std::cout); };
  entries[2].sub = add_subcommand(app, "eigen", "spectral probes of the CN matrix", entries[2].args);
  entries[2].run = [](const auto& cfg) { return kdv::cli::cmd_eigen(cfg, std::cout); };
  entries[3].sub = add_subcommand(app, "converge", "grid-refinement study", entries[3].args);
  entries[3].run = [](const auto& cfg) { return kdv::cli::cmd_converge(cfg, std::cout); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kdv::cli::kExitOk : kdv::cli::kExitUsage;
  }

  for (auto& entry : entries) {
    if (!entry.sub->parsed()) continue;
    try {
      return entry.run(load(*entry.sub, entry.args));
    } catch (const std::exception& e) {
      std::cerr << "kdvlab " << entry.sub->get_name() << ": " << e.what() << "\n";
      return kdv::cli::kExitUsage;
    }
  }
  return kdv::cli::kExitUsage;
}
