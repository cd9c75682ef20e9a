#pragma once

#include <stdexcept>
#include <string>

namespace qba {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an enumeration exceeds its configured branch budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw Error(msg);
}

}  // namespace qba
