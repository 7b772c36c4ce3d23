#ifndef HYPERAFF_ERRORS_HPP
#define HYPERAFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperaff {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotAbelianError : std::runtime_error {
    NotAbelianError(std::size_t i, std::size_t j)
        : std::runtime_error("generators " + std::to_string(i + 1) + " and " +
                             std::to_string(j + 1) + " do not commute"),
          first(i), second(j) {}
    std::size_t first, second;
};

struct NotInvertibleError : std::runtime_error {
    explicit NotInvertibleError(std::size_t k)
        : std::runtime_error("generator " + std::to_string(k + 1) + " is not invertible"),
          index(k) {}
    std::size_t index;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MembershipError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hyperaff

#endif
