#pragma once

#include <iosfwd>

namespace dtlab::cli {

/// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 numeric precondition, 4 ambiguous rank.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dtlab::cli
