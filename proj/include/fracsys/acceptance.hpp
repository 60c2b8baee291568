#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fracsys::acceptance {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

/// Runs the full verification suite: quadrature exactness, semigroup and
/// inversion refinement, the Mittag-Leffler and classical solver oracles,
/// the contraction ledger, the hypothesis gate with the unboundedness demo,
/// the nonuniqueness demo, the multi-order cross-check and thread-count
/// determinism. One line per criterion goes to `progress` as it completes.
std::vector<CriterionResult> run_all(std::uint64_t seed, std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fracsys::acceptance
