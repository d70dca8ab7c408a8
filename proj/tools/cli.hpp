#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <hgflow/types.hpp>

namespace hgflow::cli {

// Parses "re", "imj" or "re+imj" / "re-imj". Throws hgflow::Error
// (InvalidArgument) on anything else.
cplx parse_complex(const std::string& token);

// Runs one subcommand; args excludes the program name. Exit code 0 when every
// check passes, 1 when one fails, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hgflow::cli
