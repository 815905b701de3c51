#pragma once

#include "shlr/report.hpp"

namespace shlr {

struct CommandOptions {
    std::string pair;      // module name; empty = the first declared module
    std::string morphism;  // fat morphism name (weq, linear-part)
    std::string left, right; // pair names for coproduct
    std::string f, g;      // morphism names for pushout
    std::string p;         // base morphism name for lift
    bool timing = false;
};

// Dispatch for: check-d2, ce, extract-brackets, linear-part, cohomology, weq,
// coproduct, pushout, cylinder, dualize, lift.
Report run_command(const std::string& cmd, const ModelFile& model, const CommandOptions& opts);

} // namespace shlr
