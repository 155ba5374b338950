#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtlab/io.hpp"

namespace dtlab::verify {

enum class Status { Pass, Fail, Precondition, Error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Precondition: return "window-precondition";
    case Status::Error: return "error";
  }
  return "unknown";
}

struct Check {
  std::string name;
  std::string relation;  // "<=", ">=" or "=="
  double measured = 0;
  double bound = 0;
  bool pass = false;
};

struct TagResult {
  std::string tag;
  std::string title;
  Status status = Status::Pass;
  std::vector<Check> checks;
  std::string message;  // set for precondition and error outcomes
};

struct Options {
  int window = 64;
  std::optional<std::string> only;
};

struct Report {
  Options options;
  std::vector<TagResult> results;

  /// 0 when every tag passes, 3 when the only problems are window preconditions, 1 otherwise.
  int exit_code() const;
};

/// The suite tags in execution order.
const std::vector<std::string>& tags();

/// Throws Error(Config) for an unknown --only tag.
Report run(const Options& options);

io::Json to_json(const Report& report);
std::string to_text(const Report& report);

}  // namespace dtlab::verify
