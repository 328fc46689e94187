#pragma once

#include <stdexcept>
#include <string>

namespace irt {

// Unreadable or malformed input: files, headers, manifests, model files.
// CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated call contract or numeric failure: bad dimensions, out-of-range
// parameters, non-finite values. CLI maps this to exit code 3.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractError(what);
}

} // namespace irt
