#pragma once

namespace lcmi {

// Entry point behind the lcmi binary. Subcommands: mi, verify, sweep,
// combining, epsilon, scalars. Exit code 0 when all verdicts hold,
// 1 when any bound is violated, 2 on usage or configuration errors.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace lcmi
