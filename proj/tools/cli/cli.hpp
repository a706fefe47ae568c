#pragma once

#include <iosfwd>

namespace springer::cli {

// 0 ok, 1 a check failed (report still written to out), 2 usage or parse error (message on err)
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace springer::cli
