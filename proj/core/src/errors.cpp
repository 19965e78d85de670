#include "qme/errors.hpp"

#include <cstdarg>
#include <cstdio>

namespace qme {

namespace {

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::string join_indices(const std::vector<std::size_t>& v, std::size_t limit = 16) {
    std::string out;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    if (v.size() > limit) out += ",...";
    return out;
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::parse: return "parse";
        case ErrorCode::validation: return "validation";
        case ErrorCode::singular: return "singular";
        case ErrorCode::no_convergence: return "no-convergence";
    }
    return "unknown";
}

NegativeEntry::NegativeEntry(std::string block_name, std::size_t r, std::size_t c, double v)
    : Error(ErrorCode::validation,
            fmt("negative entry in %s at (%zu,%zu): %.17g", block_name.c_str(), r, c, v)),
      block(std::move(block_name)),
      row(r),
      col(c),
      value(v) {}

RowSumViolation::RowSumViolation(std::size_t r, double dev)
    : Error(ErrorCode::validation,
            fmt("row %zu of A+B+I+C sums to 1%+.3e, outside tolerance", r, dev)),
      row(r),
      deviation(dev) {}

Reducible::Reducible(std::vector<std::size_t> subset)
    : Error(ErrorCode::validation,
            "A+B+I+C is reducible; invariant state subset {" + join_indices(subset) + "}"),
      invariant_subset(std::move(subset)) {}

OracleCapExceeded::OracleCapExceeded(std::size_t n, std::size_t cap)
    : Error(ErrorCode::validation,
            fmt("dimension %zu exceeds the n^2 x n^2 Kronecker cap of %zu", n, cap)) {}

NotZMatrix::NotZMatrix(std::size_t r, std::size_t c, double v)
    : Error(ErrorCode::validation,
            fmt("positive off-diagonal entry %.3e at (%zu,%zu); not a Z-matrix", v, r, c)),
      row(r),
      col(c) {}

ParseError::ParseError(const std::string& message, std::size_t l, std::size_t c)
    : Error(ErrorCode::parse, fmt("line %zu, column %zu: %s", l, c, message.c_str())),
      line(l),
      column(c) {}

SingularStepMatrix::SingularStepMatrix(std::size_t block, double shift)
    : Error(ErrorCode::singular,
            fmt("step matrix M + t*N singular at diagonal block %zu (t = %.17g)", block, shift)),
      block_index(block) {}

}  // namespace qme
