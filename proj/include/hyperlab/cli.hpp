#pragma once
// Command-line front end. Kept in the library so the dispatcher can be
// exercised in-process by the tests; the installed binary is a thin wrapper.
//
// Exit codes: 0 success, 2 usage or domain error, 3 resource cap exceeded,
// 4 internal invariant failure.

#include <iosfwd>

namespace hyperlab::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperlab::cli
