#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sg/decompose.hpp"

namespace sg {

struct SelftestOptions {
    uint64_t seed = 1;
    int instances = 200;
    OracleCaps oracle_caps;
    bool with_oracle = true;
};

struct SelftestReport {
    int passed = 0;
    int failed = 0;
    std::vector<std::string> lines;  // one line per suite

    bool ok() const { return failed == 0; }
};

// Fixture checks plus seeded random instances exercising every module:
// lemma-level identities, cover structure, resolution against classification,
// decomposition soundness, and (within caps) the exhaustive minimality oracle.
SelftestReport run_selftest(const SelftestOptions& opts);

}  // namespace sg
