#pragma once

#include <ostream>

namespace mdlq::cli {

// Entry point of the mdlq tool. Exit status: 0 when every requested check
// passes, 1 when a check fails, 2 on errors (named on err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mdlq::cli
