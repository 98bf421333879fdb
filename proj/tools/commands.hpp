#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace vofrac::cli {

enum class Command { solve, converge, coeffs };

/// Exit statuses of the command-line tool.
enum ExitCode : int { ok = 0, config_error = 1, solver_failure = 2, io_error = 3 };

// Each command writes its primary data to `<out_dir>/<id>_*.{csv,json}` when
// an output directory is configured and to `out` otherwise. Human-readable
// progress and summaries go to `log`. Failures are reported as exceptions.

/// Nodal solution (columns t,U) plus, with an output directory, a JSON summary
/// holding Newton statistics and timings.
void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Convergence report (columns N,error,rate); the text table goes to `log`.
void cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Dense weight table (columns n,i,h,w). For a linear order on a uniform mesh
/// also the translation-invariant sequences and the largest dense/fast gap.
void cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Runs a command and maps exceptions to an ExitCode, printing the message to `log`.
int dispatch(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// "%.17g" formatting, independent of stream state and locale.
std::string format_double(double v);

}  // namespace vofrac::cli
