#ifndef FWC_COMMON_HPP
#define FWC_COMMON_HPP

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fwc {

using BigInt = boost::multiprecision::cpp_int;

// Mixed-field operands, malformed matrices, broken file formats.
struct structural_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Mathematically undefined request (inv(0), quadratic character of an
// even-size field, dependent basis, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Enumeration budget exceeded; message names the budget.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact identity that must hold internally failed (e.g. the dual
// transform produced a non-integer).  Signals a bad input or a bug.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid family/function specification.
struct spec_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Default codeword-enumeration budget.  FWC_BUDGET in the environment
// overrides it; call sites may also pass an explicit budget.
inline std::uint64_t enumeration_budget() {
    static const std::uint64_t budget = [] {
        if (const char* s = std::getenv("FWC_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1} << 26;
    }();
    return budget;
}

}  // namespace fwc

#endif
