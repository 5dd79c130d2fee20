#pragma once

namespace mars {

// Entry point behind the `mars` binary. Exit codes: 0 success (and, for
// `analyze`, controllable), 1 malformed input, 2 analyzed structure not
// controllable, 3 no feasible plan.
int run_cli(int argc, const char* const* argv);

}  // namespace mars
