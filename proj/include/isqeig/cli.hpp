#pragma once
// Command-line front end: reference spectra, single solves, convergence sweeps and
// the validation suite, written as CSV or JSON.
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace isq::cli {

enum ExitCode : int { kOk = 0, kBadArguments = 2, kNumericalFailure = 3, kValidationFailure = 4 };

struct Sweep {
  int first = 0;
  int last = 0;
  int step = 1;
  bool geometric = false;  // step multiplies instead of adds
  std::vector<int> values() const;
};

/// "K=a:b:step", "K=a:b" (step 1) or "K=a:b:*f" (a, a*f, a*f^2, ... up to b).
Sweep parse_sweep(const std::string& text);

struct RunConfig {
  std::string command;
  std::string geometry = "disk";
  std::string method;        // empty: II for balls and sectors, msem for square/lshape
  double c = 0.0;
  double gamma = 0.5;
  std::optional<double> R;   // default 0.3 (square) or 0.5 (lshape)
  int K = 16;
  int N = 3;
  std::vector<int> quad_degrees;  // K0,N0,K1,N1[,K2,N2,K3,N3,K4,N4]
  int count = 5;
  std::optional<Sweep> sweep;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
  std::string module;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;  // JSON only
};

/// Header plus rows; doubles in 17 significant digits, empty cells for missing values.
std::string to_csv(const Table& t);

Table cmd_reference(const RunConfig& cfg);
Table cmd_solve(const RunConfig& cfg);
Table cmd_convergence(const RunConfig& cfg);
/// Report rows (module, check, value, tolerance, pass); `passed` is set false on any failure.
Table cmd_validate(const RunConfig& cfg, bool& passed);

/// Parses argv, dispatches and writes the result. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isq::cli
