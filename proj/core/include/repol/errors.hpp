#pragma once

#include <stdexcept>
#include <string>

namespace repol {

// Runtime error carrying a short machine-checkable category ("shape",
// "domain", "empty", "config", "protocol", "generator", "norm").
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(category + ": " + message),
          category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

}  // namespace repol
