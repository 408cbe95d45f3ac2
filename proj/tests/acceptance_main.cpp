// Runs every acceptance criterion and exits nonzero when any fails.
//
//   qarea_acceptance [--quick] [--only N] [--seed S] [--threads K]

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "qarea/acceptance.hpp"

namespace {

long long parse_number(const char* flag, const char* value) {
    if (value == nullptr) {
        std::fprintf(stderr, "error: %s needs a value\n", flag);
        std::exit(2);
    }
    char* end = nullptr;
    const long long v = std::strtoll(value, &end, 10);
    if (end == value || *end != '\0') {
        std::fprintf(stderr, "error: %s got a non-numeric value '%s'\n", flag, value);
        std::exit(2);
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    qarea::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        const char* next = i + 1 < argc ? argv[i + 1] : nullptr;
        if (arg == "--quick") {
            options.quick = true;
        } else if (arg == "--only") {
            options.only = static_cast<int>(parse_number("--only", next));
            ++i;
        } else if (arg == "--seed") {
            options.seed = static_cast<std::uint64_t>(parse_number("--seed", next));
            ++i;
        } else if (arg == "--threads") {
            options.threads = static_cast<unsigned>(parse_number("--threads", next));
            ++i;
        } else if (arg == "--help" || arg == "-h") {
            std::printf("usage: qarea_acceptance [--quick] [--only N] [--seed S] [--threads K]\n");
            return 0;
        } else {
            std::fprintf(stderr, "error: unknown argument '%s'\n", arg.c_str());
            return 2;
        }
    }
    const auto results = qarea::run_acceptance(options, std::cout);
    return qarea::all_passed(results) ? 0 : 1;
}
