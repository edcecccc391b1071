#pragma once

#include <ostream>

namespace wglab {

/// Exit status: 0 success, 1 domain error, 2 usage or configuration error.
int cli_dispatch(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wglab
