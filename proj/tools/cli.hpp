#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gslab/scf.hpp"

namespace gslab::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 1,
  kBoundFail = 2,
  kTheoremViolation = 3,
};

// Runs one command line (args excludes the program name). Reports go to the
// --out file if given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Builds a rule from "borda", "plurality", "constant:A", "dictator:I" (1-based
// voter), "random:SEED" or "tabular:PATH". Throws DomainError.
SocialChoiceFn make_rule(const std::string& text, int q, std::size_t n);

}  // namespace gslab::cli
