#ifndef ALE1D_ERRORS_HPP
#define ALE1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ale1d {

/// Machine-readable failure categories, also used as CLI exit codes.
enum class ErrorCategory {
    config = 2,
    invalid_state = 3,
    mesh_tangling = 4,
    predictor_divergence = 5,
    element_inversion = 6,
    eigen_failure = 7,
    out_of_domain = 8,
    interval = 9,
    deadlock = 10,
    io = 11,
    comparison = 12,
};

const char* to_string(ErrorCategory cat);

class SolverError : public std::runtime_error {
public:
    SolverError(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), cat_(cat) {}

    ErrorCategory category() const { return cat_; }
    int exit_code() const { return static_cast<int>(cat_); }

private:
    ErrorCategory cat_;
};

[[noreturn]] inline void fail(ErrorCategory cat, const std::string& msg) {
    throw SolverError(cat, msg);
}

} // namespace ale1d

#endif
