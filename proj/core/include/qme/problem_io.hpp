#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "qme/problem.hpp"

namespace qme {

// Plain-text problem format, bit-exact under write -> read:
//   line 1: the integer n
//   then exactly 3n non-empty lines of n whitespace-separated decimals:
//   rows 1..n of A, then of B, then of C.
// Lines starting with '#' are comments; blank lines are skipped. Writers emit
// 17 significant digits, UTF-8, LF line endings.
QbdProblem read_problem(const std::filesystem::path& path);
QbdProblem read_problem(std::istream& in);

void write_problem(const QbdProblem& p, const std::filesystem::path& path);
void write_problem(const QbdProblem& p, std::ostream& out);

// Writes a single matrix in the same layout (n, then n rows); used by the
// CLI to store computed solutions.
void write_matrix(const DenseMatrix& m, const std::filesystem::path& path);

}  // namespace qme
