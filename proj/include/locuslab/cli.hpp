#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locuslab/band_symbol.hpp"
#include "locuslab/config.hpp"
#include "locuslab/locus.hpp"

namespace locuslab::cli {

/// Input problem; `line` is 0 when no single line is at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct RunConfig {
  std::optional<BandSymbol> symbol;  ///< absent when k/h/n are not given
  std::vector<int> ms{4};
  Tolerances tol;
  ScanGrid grid;
  int resolution = 128;  ///< C_A sample grid for `verify`
  int samples = 2048;    ///< curve resolution
  int d = 2;             ///< hypocycloid parameter
};

/// "a", "a+bi", "a-bi", "bi" with optional spaces; throws ConfigError.
Complex parse_complex(const std::string& text, int line = 0);

/// Line-based `key = value` format, '#' starts a comment. Keys: k, h, n,
/// c[j], m (comma list), seed, d, samples, resolution, grid.{re_min, re_max,
/// im_min, im_max, nx, ny}, tol.<field>.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::filesystem::path& path);

nlohmann::json point_to_json(const LocusPoint& p);
LocusPoint point_from_json(const nlohmann::json& j);
nlohmann::json locus_to_json(const EigenLocus& locus);
EigenLocus locus_from_json(const nlohmann::json& j);

struct SvgLayer {
  enum class Style { dots, polyline, closed_polyline, segments };
  std::vector<Complex> points;  ///< consecutive pairs for `segments`
  Style style = Style::dots;
  std::string color = "black";
};

/// Self-contained SVG with a y-up coordinate frame fitted to all layers.
std::string render_svg(const std::vector<SvgLayer>& layers, int size = 640);

/// Output directory: `requested` if non-empty, else $LOCUSLAB_OUT, else
/// "locuslab_out".
std::filesystem::path output_dir(const std::string& requested);

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"locus", "cregion", "basis", "verify", "hypocycloid", "measure"};
  return c;
}

/// Runs one command and writes its artifacts plus defects.json into `out`.
/// Returns 0 on success, 1 when defects were reported, 2 on input errors.
int run_command(const std::string& command, const RunConfig& config, const std::filesystem::path& out,
                std::ostream& log);

/// Records an input error that happened before any command ran (for example
/// while reading the config) in `out`/defects.json and returns 2.
int report_input_error(const std::string& command, const std::filesystem::path& out, const std::string& message,
                       std::ostream& log);

}  // namespace locuslab::cli
