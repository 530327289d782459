#include "opgeo/report.hpp"

namespace opgeo {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"identity", r.identity},  {"status", to_string(r.status)},
          {"max_error", r.max_error}, {"tolerance", r.tolerance},
          {"seed", r.seed},           {"ladder", r.ladder}};
}

}  // namespace opgeo
