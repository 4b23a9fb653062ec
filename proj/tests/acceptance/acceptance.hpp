#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace acceptance {

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// fatal check with a formatted location message
#define ACC_REQUIRE(cond)                                                            \
    do {                                                                             \
        if (!(cond))                                                                 \
            throw ::acceptance::CheckFailure(std::string(#cond) + " failed at " +    \
                                             __FILE__ + ":" + std::to_string(__LINE__)); \
    } while (0)

#define ACC_REQUIRE_MSG(cond, msg)                                                     \
    do {                                                                               \
        if (!(cond)) {                                                                 \
            std::ostringstream oss_;                                                   \
            oss_ << #cond << " failed at " << __FILE__ << ":" << __LINE__ << " (" << msg \
                 << ")";                                                               \
            throw ::acceptance::CheckFailure(oss_.str());                              \
        }                                                                              \
    } while (0)

struct Criterion {
    int number;
    std::string name;
    double budget_s;  // runtime bound from the criterion text; 0 = none
    std::function<void()> body;
};

std::vector<Criterion>& registry();

// Runs all criteria in order, printing one pass/fail line each; returns the
// number of failures.
int run_all();

}  // namespace acceptance
