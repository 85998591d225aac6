#pragma once

#include <iosfwd>

#include "f2w/config.hpp"

namespace f2w {

// Desk-scale property suite over the supporting inequalities and identities.
// Emits one `name,status,measured,threshold` line per check; returns the
// number of failed checks (expected-fail lines count as pass when they fail
// as constructed).
int run_verify(const ExperimentConfig& cfg, std::ostream& os);

}  // namespace f2w
