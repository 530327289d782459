#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "opgeo/core.hpp"
#include "opgeo/report.hpp"

namespace opgeo {

/// Configuration or command-line misuse; mapped to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

inline const std::vector<std::string> kSuiteNames = {
    "ideals", "dixmier", "disc", "quantization", "grassmannian", "flat", "matfun"};

struct RunConfig {
  std::uint64_t seed = 1;
  int ladder_kmin = 4;
  int ladder_kmax = 9;
  std::vector<std::string> suites;
  int trials = 3;
  double tolerance = 1e-3;
  double hbar = 1.0;
  std::string out_dir = "reports";

  static RunConfig from_json(const nlohmann::json& j);
  void validate() const;  // throws ConfigError
};

/// Runs one suite; reports come back in a fixed deterministic order.
std::vector<VerificationReport> run_suite(const std::string& name, const RunConfig& cfg);

/// Runs every configured suite and writes one JSON report per identity plus
/// summary.json into cfg.out_dir. Returns 0 (all pass/inconclusive-free) or 1.
int run_all(const RunConfig& cfg);

/// Convergence table for a diagonal law "c,p[;c,p]*" over the dyadic ladder
/// kmin..kmax: N, sigma_N, sigma_N / log N, local slope, exact L^(1,inf) flag.
std::string converge_csv(const std::string& law_spec, int kmin, int kmax);

/// Full command-line entry point (exit code 0 / 1 / 2).
int cli_main(int argc, const char* const* argv);

}  // namespace opgeo
