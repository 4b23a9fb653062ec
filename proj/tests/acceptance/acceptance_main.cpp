#include "acceptance.hpp"

namespace acceptance {

std::vector<Criterion>& registry() {
    static std::vector<Criterion> criteria;
    return criteria;
}

int run_all() {
    int failures = 0;
    for (const auto& criterion : registry()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (error.empty() && criterion.budget_s > 0 && elapsed > criterion.budget_s) {
            std::ostringstream oss;
            oss << "runtime " << elapsed << " s exceeds budget " << criterion.budget_s
                << " s";
            error = oss.str();
        }
        if (error.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", criterion.number,
                        criterion.name.c_str(), elapsed);
        } else {
            std::printf("[FAIL] criterion %d: %s: %s\n", criterion.number,
                        criterion.name.c_str(), error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}

}  // namespace acceptance

int main() {
    const int failures = acceptance::run_all();
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
