#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace opgeo {

enum class Status { pass, fail, inconclusive };

std::string to_string(Status s);

/// Outcome of one identity check over an ensemble.
struct VerificationReport {
  std::string identity;
  Status status = Status::pass;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> ladder;

  void absorb(double err) {
    if (err > max_error) max_error = err;
    if (status == Status::pass && err > tolerance) status = Status::fail;
  }
  bool passed() const { return status == Status::pass; }
};

nlohmann::json to_json(const VerificationReport& r);

}  // namespace opgeo
