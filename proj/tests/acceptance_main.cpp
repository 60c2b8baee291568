#include <cstdlib>
#include <iostream>

#include "fracsys/acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = fracsys::acceptance::run_all(seed, &std::cout);
    const bool ok = fracsys::acceptance::all_passed(results);
    std::cout << (ok ? "acceptance: all criteria passed\n"
                     : "acceptance: FAILURES present\n");
    return ok ? 0 : 1;
}
