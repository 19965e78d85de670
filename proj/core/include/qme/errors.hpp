#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qme {

// Coarse error class, used by the CLI to map failures onto exit codes.
enum class ErrorCode {
    parse,
    validation,
    singular,
    no_convergence,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// --- validation ---

struct DimensionMismatch final : Error {
    explicit DimensionMismatch(const std::string& message)
        : Error(ErrorCode::validation, message) {}
};

struct NonFiniteInput final : Error {
    explicit NonFiniteInput(const std::string& message)
        : Error(ErrorCode::validation, message) {}
};

struct NegativeEntry final : Error {
    NegativeEntry(std::string block_name, std::size_t row, std::size_t col, double value);

    std::string block;
    std::size_t row;
    std::size_t col;
    double value;
};

struct RowSumViolation final : Error {
    RowSumViolation(std::size_t row, double deviation);

    std::size_t row;
    double deviation;
};

struct Reducible final : Error {
    explicit Reducible(std::vector<std::size_t> invariant_subset);

    // A proper nonempty set of states with no transitions leaving it.
    std::vector<std::size_t> invariant_subset;
};

struct ParameterOutOfRange final : Error {
    explicit ParameterOutOfRange(const std::string& message)
        : Error(ErrorCode::validation, message) {}
};

struct TargetUnreachable final : Error {
    explicit TargetUnreachable(const std::string& message)
        : Error(ErrorCode::validation, message) {}
};

struct OracleCapExceeded final : Error {
    OracleCapExceeded(std::size_t n, std::size_t cap);
};

struct NotZMatrix final : Error {
    NotZMatrix(std::size_t row, std::size_t col, double value);

    std::size_t row;
    std::size_t col;
};

// --- parse ---

struct ParseError final : Error {
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line;    // 1-based
    std::size_t column;  // 1-based
};

// --- singular ---

struct Singular final : Error {
    explicit Singular(const std::string& message)
        : Error(ErrorCode::singular, message) {}
};

struct SingularSystem final : Error {
    explicit SingularSystem(const std::string& message)
        : Error(ErrorCode::singular, message) {}
};

struct SingularStepMatrix final : Error {
    SingularStepMatrix(std::size_t block_index, double shift);

    std::size_t block_index;
};

struct CertificateFailure final : Error {
    explicit CertificateFailure(const std::string& message)
        : Error(ErrorCode::singular, message) {}
};

// --- no convergence ---

struct NoConvergence final : Error {
    explicit NoConvergence(const std::string& message)
        : Error(ErrorCode::no_convergence, message) {}
};

struct MaxIterations final : Error {
    explicit MaxIterations(const std::string& message)
        : Error(ErrorCode::no_convergence, message) {}
};

struct MonotonicityViolation final : Error {
    explicit MonotonicityViolation(const std::string& message)
        : Error(ErrorCode::no_convergence, message) {}
};

}  // namespace qme
