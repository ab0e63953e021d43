#pragma once

#include <ostream>

namespace ppp {

// Runs the full acceptance suite, printing one pass/fail line per criterion.
// Returns the number of failed criteria.
int run_selftest(std::ostream& out);

}  // namespace ppp
