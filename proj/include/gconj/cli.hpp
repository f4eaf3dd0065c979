#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gconj::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kParseError = 3,
  kIoError = 4,
  kCounterexample = 10,
};

/// Runs one command line (without the program name). `in` feeds
/// `invariants` when no --input file is given.
///
///   search      CE or random search on one conjecture/game
///   invariants  per-graph invariants and conjecture scores for g6 input
///   dataset     ER/WS/HoG/BA graphs labeled with Laplacian spectra
///   serve       interactive session server
///
/// Every search/dataset run, and invariants with --out, writes
/// <out>/manifest.json. Any option can also come from --config FILE, a
/// key=value file (keys are long option names) or a previous manifest.json;
/// flags on the command line win.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace gconj::cli
