#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/error.hpp"
#include "shadowlab/linalg.hpp"

namespace shadowlab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,        // unparseable input
  kExitUnsupported = 3,  // no closed form or ensemble/matrix mismatch
  kExitValidation = 4,   // compare thresholds failed
};

/// Malformed command-line value or input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  std::string command;
  std::string matrix;
  std::string ensemble = "complex";
  std::optional<std::string> grid;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned bins = 50;
  std::optional<unsigned> quad_order;
  std::string out;   // empty: stdout
  std::string svg;
  std::string hist;  // sample: histogram CSV
  std::string model = "auto";
  double ks_threshold = 0.01;
  unsigned threads = 0;
};

/// diag:v1,v2,... | file:<path> | fixture:<name>
ComplexMatrix parse_matrix(const std::string& spec);

/// Names accepted by fixture:<name>.
std::vector<std::string> fixture_names();
ComplexMatrix fixture(const std::string& name);

/// Single entry of a matrix file: a, bi, a+bi, a-bi (also with j).
cplx parse_complex(const std::string& text);

/// lo:hi:points with points >= 2 and lo < hi.
GridSpec parse_grid(const std::string& text);

/// Seed from the config, else SHADOWLAB_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(const RunConfig& config);

/// Shortest round-trip-safe text with 17 significant digits, '.' decimal.
std::string format_double(double v);

int cmd_density(const RunConfig& config, std::ostream& log);
int cmd_sample(const RunConfig& config, std::ostream& log);
int cmd_compare(const RunConfig& config, std::ostream& log);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace shadowlab::cli
