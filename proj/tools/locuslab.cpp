#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "locuslab/cli.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions{
    {"locus", "solve the eigenvalue locus for each m"},
    {"cregion", "sample the region C_A"},
    {"basis", "build the maximal-minor basis and its triangularity report"},
    {"verify", "residual, distance and symmetry diagnostics over the m list"},
    {"hypocycloid", "star boundary curve and the hypocycloid formula"},
    {"measure", "root-counting measure of each locus"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue loci of banded Toeplitz pencils"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::vector<int> ms;
  int d = 0;
  for (const auto& name : locuslab::cli::commands()) {
    auto* sub = app.add_subcommand(name, kDescriptions.count(name) ? kDescriptions.at(name) : "");
    sub->add_option("-c,--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir, "output directory (default $LOCUSLAB_OUT or ./locuslab_out)");
    sub->add_option("-m", ms, "matrix sizes, overriding the config");
    if (name == "hypocycloid") sub->add_option("-d", d, "star parameter, overriding the config")->check(CLI::PositiveNumber);
    if (name != "hypocycloid") sub->needs(sub->get_option("--config"));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  locuslab::cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = locuslab::cli::parse_config_file(config_path);
  } catch (const locuslab::cli::ConfigError& e) {
    return locuslab::cli::report_input_error(command, locuslab::cli::output_dir(out_dir), e.what(), std::cerr);
  }
  if (!ms.empty()) cfg.ms = ms;
  if (d > 0) cfg.d = d;
  return locuslab::cli::run_command(command, cfg, locuslab::cli::output_dir(out_dir), std::cout);
}
