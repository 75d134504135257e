#include "lpam/verify.hpp"

#include <cstring>
#include <iostream>

// Runs every acceptance criterion and prints one pass/fail line each.
int main(int argc, char** argv) {
    lpam::VerifyOptions options;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) options.suite = argv[++i];
        if (std::strcmp(argv[i], "--rng") == 0 && i + 1 < argc) options.rng = std::strtoull(argv[++i], nullptr, 10);
        if (std::strcmp(argv[i], "--dimension-n") == 0 && i + 1 < argc) options.dimension_n = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--diameter-n") == 0 && i + 1 < argc) options.diameter_n = std::atoi(argv[++i]);
    }
    const auto results = lpam::run_verification(options, std::cout);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.ran || !r.passed) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
