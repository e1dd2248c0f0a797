#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "shapeforge/cli.hpp"
#include "shapeforge/error.hpp"

int main(int argc, char** argv) {
  using namespace shapeforge::cli;

  CLI::App app{"Shape analysis of 2-D particle outlines"};
  RunConfig config;
  std::string command, metric = "elastic", reference = "circle";
  double min_solidity = 0.0;

  app.add_option("command", command, "distmat | pca | test | monitor | align")
      ->required()
      ->check(CLI::IsMember({"distmat", "pca", "test", "monitor", "align"}));
  app.add_option("-i,--input", config.inputs, "Contour files (csv, json) or PGM masks")->required();
  app.add_option("-f,--format", config.format, "Input format")
      ->check(CLI::IsMember({"csv", "json", "pgm"}))
      ->capture_default_str();
  app.add_option("-n,--resample", config.resample, "Points per resampled outline")->capture_default_str();
  app.add_option("-m,--metric", metric, "Shape metric")
      ->check(CLI::IsMember({"procrustes", "elastic"}))
      ->capture_default_str();
  app.add_option("-r,--reference", reference, "circle | mean | file:PATH")->capture_default_str();
  app.add_option("-k,--components", config.components, "Principal geodesics to report")->capture_default_str();
  app.add_option("-s,--seed", config.seed, "Seed for the permutation test")->capture_default_str();
  app.add_option("-o,--out", config.out_dir, "Output directory")->capture_default_str();
  app.add_option("--permutations", config.permutations, "Permutations per pairwise test")->capture_default_str();
  app.add_option("--phase1-group", config.phase1_group, "monitor: group forming phase 1 (default: first group)");
  auto* solidity_opt = app.add_option("--min-solidity", min_solidity, "Drop contours with lower solidity");
  app.add_option("--min-area", config.min_area, "pgm: smallest component in pixels")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("argument", e.what()) << std::endl;
    return 2;
  }

  try {
    config.command = *parse_command(command);
    config.metric = metric == "procrustes" ? Metric::procrustes : Metric::elastic;
    config.reference = parse_reference(reference);
    if (solidity_opt->count() > 0) config.min_solidity = min_solidity;
  } catch (const shapeforge::Error& e) {
    std::cerr << error_json(to_string(e.kind()), e.what()) << std::endl;
    return 2;
  }
  return run(config, std::clog, std::cerr);
}
