#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sgehom {

// Invalid model input (bad geometry for a closed form, unsupported shape,
// singular denominators). CLI maps this to exit code 2.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid job configuration; carries every violation found, not just the
// first. CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> violations_)
        : std::runtime_error(join(violations_)), violations(std::move(violations_)) {}

    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string> &v) {
        std::string s = "invalid configuration:";
        for (const auto &x : v) s += "\n  - " + x;
        return s;
    }
};

}  // namespace sgehom
