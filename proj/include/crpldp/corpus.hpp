#pragma once

#include <string>
#include <vector>

#include "crpldp/conjugate.hpp"

namespace crpldp {

// Named 1-d test functions for the conjugacy property suite and the CLI
// conjugate-table subcommand.
std::vector<std::string> corpus_names();
ExtFunction corpus_function(const std::string& name);

}  // namespace crpldp
