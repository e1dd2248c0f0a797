#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shapeforge::cli {

enum class Command { distmat, pca, test, monitor, align };
enum class Metric { procrustes, elastic };

struct Reference {
  enum class Kind { circle, mean, file };
  Kind kind = Kind::circle;
  std::string path;  // Kind::file only
};

/// Parses `circle`, `mean` or `file:PATH`.
Reference parse_reference(std::string_view text);

struct RunConfig {
  Command command = Command::distmat;
  std::vector<std::string> inputs;
  std::string format = "csv";  // csv | json | pgm
  std::size_t resample = 100;
  Metric metric = Metric::elastic;
  Reference reference;
  std::size_t components = 2;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
  std::size_t permutations = 9999;
  /// monitor: group whose contours form phase 1; empty means the first group.
  std::string phase1_group;
  std::optional<double> min_solidity;
  /// pgm: smallest traced component, in pixels.
  std::size_t min_area = 10;
};

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);
std::string_view to_string(Metric m);

/// Throws shapeforge::Error(invalid_argument) on inconsistent flags.
void validate(const RunConfig& config);

/// Runs one command, writing its reports under config.out_dir. Throws
/// shapeforge::Error on failure.
void execute(const RunConfig& config, std::ostream& log);

/// execute() with errors reported as one JSON line on `err`. Returns the
/// process exit code.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

std::string error_json(std::string_view kind, std::string_view message);

}  // namespace shapeforge::cli
