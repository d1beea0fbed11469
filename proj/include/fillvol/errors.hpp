#ifndef FILLVOL_ERRORS_HPP
#define FILLVOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fillvol {

// Domain error codes. The CLI maps these to exit code 2, except
// BudgetExceeded and SizeLimitExceeded which map to exit code 3.
enum class errc {
    NonOrientable,
    NotClosed,
    DegreeMismatch,
    InvalidAutomorphism,
    OrientationReversing,
    NotUnimodular,
    NotSL2,
    TraceTooSmall,
    InadmissibleFlip,
    Infeasible,
    Unbounded,
    BudgetExceeded,
    SizeLimitExceeded,
    NotSubadditive,
    BadInput,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::NonOrientable: return "NonOrientable";
        case errc::NotClosed: return "NotClosed";
        case errc::DegreeMismatch: return "DegreeMismatch";
        case errc::InvalidAutomorphism: return "InvalidAutomorphism";
        case errc::OrientationReversing: return "OrientationReversing";
        case errc::NotUnimodular: return "NotUnimodular";
        case errc::NotSL2: return "NotSL2";
        case errc::TraceTooSmall: return "TraceTooSmall";
        case errc::InadmissibleFlip: return "InadmissibleFlip";
        case errc::Infeasible: return "Infeasible";
        case errc::Unbounded: return "Unbounded";
        case errc::BudgetExceeded: return "BudgetExceeded";
        case errc::SizeLimitExceeded: return "SizeLimitExceeded";
        case errc::NotSubadditive: return "NotSubadditive";
        case errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }
    bool is_budget() const {
        return code_ == errc::BudgetExceeded || code_ == errc::SizeLimitExceeded;
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

} // namespace fillvol

#endif
