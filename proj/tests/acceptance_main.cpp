// Standalone acceptance runner: one line per criterion, nonzero exit when any
// criterion fails. `--seed <n>` reseeds the randomized criteria.
#include "npstein/verify.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    npstein::VerifyOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) {
            opt.seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: " << argv[0] << " [--seed <n>]\n";
            return 2;
        }
    }
    const int failures = npstein::print_acceptance(std::cout, opt);
    return failures == 0 ? 0 : 1;
}
