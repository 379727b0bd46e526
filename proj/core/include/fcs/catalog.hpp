#pragma once

#include <string>

#include "fcs/popescu.hpp"

namespace fcs {

std::vector<std::string> example_names();

/// Builds a named example system. `seed` is only used by random_ergodic.
PopescuSystem example_system(const std::string& name, unsigned seed = 0);

}  // namespace fcs
