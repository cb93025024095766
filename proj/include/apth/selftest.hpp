#pragma once

#include <ostream>

namespace apth {

/// Runs the small-scale invariant suites of every module plus the CSV/JSON
/// round trips, writing one `ok` / `FAIL` line per check. True iff all pass.
bool run_selftest(std::ostream& log);

}  // namespace apth
