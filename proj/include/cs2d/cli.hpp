#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "cs2d/grid.hpp"
#include "cs2d/oscillator.hpp"
#include "json.hpp"

namespace cs2d::cli {

enum class Command {
  su2_density,
  schrodinger_density,
  coefficients,
  variances,
  energy,
  overlap,
  verify_identity,
  figure
};

enum class OutputFormat { csv, pgm, json };

/// Raw option values keyed by long flag name without dashes ("psi",
/// "bra-alpha", ...). Flags and --config files both reduce to this form.
using OptionMap = std::map<std::string, std::string>;

struct RunConfig {
  Command command = Command::su2_density;
  std::string state = "su2";  // su2 | schrodinger, for the property commands
  Complex psi{0.0, 0.0};
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};
  int p = 1;
  int q = 1;
  int nu = 0;
  std::optional<int> terms;
  std::optional<GridSpec> grid;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::csv;
  std::optional<double> tolerance;
  int threads = 1;

  // overlap
  std::optional<Complex> bra_psi;
  std::optional<Complex> bra_alpha;
  std::optional<Complex> bra_beta;
  std::optional<int> bra_nu;

  // verify-identity
  std::string kind = "su2";
  int n = 0;
  int m = 0;
  int n_max = 4;
  int m_max = 4;

  // figure
  std::string name;
};

/// "re,im" with both parts finite.
Complex parse_complex(const std::string& text);

/// "xmin:xmax:nx,ymin:ymax:ny".
GridSpec parse_grid(const std::string& text);

Command parse_command(const std::string& text);
std::string command_name(Command c);

RunConfig config_from_options(const OptionMap& options);

/// Reads a JSON object whose keys are flag names; scalar values of any JSON
/// type are accepted and converted to their textual form.
OptionMap options_from_json(const nlohmann::json& j);

/// Flag parsing (CLI11). A --config file is merged first; explicit flags win.
RunConfig parse_args(int argc, const char* const* argv);

/// Executes the command, writing artifacts and printing the JSON run report
/// to `out`. Returns the process exit status: 0 success, 1 validation error,
/// 2 numerical contract failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code mapping applied to parse errors too.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cs2d::cli
