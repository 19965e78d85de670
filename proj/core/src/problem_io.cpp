#include "qme/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qme/errors.hpp"

namespace qme {

namespace {

bool significant(std::string_view line) {
    for (char ch : line) {
        if (ch == '#') return false;
        if (!std::isspace(static_cast<unsigned char>(ch))) return true;
    }
    return false;
}

struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    // next line that is neither blank nor a comment
    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line_no;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (significant(out)) return true;
        }
        return false;
    }
};

std::vector<double> parse_row(const std::string& line, std::size_t expected, std::size_t line_no) {
    std::vector<double> values;
    values.reserve(expected);
    const char* cur = line.data();
    const char* end = line.data() + line.size();
    while (true) {
        while (cur != end && std::isspace(static_cast<unsigned char>(*cur))) ++cur;
        if (cur == end) break;
        const auto column = static_cast<std::size_t>(cur - line.data()) + 1;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(cur, end, value);
        if (ec != std::errc{} || (ptr != end && !std::isspace(static_cast<unsigned char>(*ptr)))) {
            throw ParseError("expected a decimal number", line_no, column);
        }
        if (values.size() == expected) {
            throw ParseError("row has more than " + std::to_string(expected) + " entries",
                             line_no, column);
        }
        values.push_back(value);
        cur = ptr;
    }
    if (values.size() != expected) {
        throw ParseError("row has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(expected),
                         line_no, line.size() + 1);
    }
    return values;
}

}  // namespace

QbdProblem read_problem(std::istream& in) {
    LineReader reader{in};
    std::string line;
    if (!reader.next(line)) throw ParseError("missing dimension line", 1, 1);

    std::size_t n = 0;
    {
        const char* cur = line.data();
        const char* end = line.data() + line.size();
        while (cur != end && std::isspace(static_cast<unsigned char>(*cur))) ++cur;
        auto [ptr, ec] = std::from_chars(cur, end, n);
        bool trailing = false;
        for (const char* t = ptr; t != end; ++t) {
            if (!std::isspace(static_cast<unsigned char>(*t))) trailing = true;
        }
        if (ec != std::errc{} || trailing || n == 0) {
            throw ParseError("expected a positive integer dimension", reader.line_no,
                             static_cast<std::size_t>(cur - line.data()) + 1);
        }
    }

    DenseMatrix blocks[3] = {DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n)};
    for (auto& block : blocks) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reader.next(line)) {
                throw ParseError("unexpected end of file: expected " + std::to_string(3 * n) +
                                 " matrix rows",
                                 reader.line_no + 1, 1);
            }
            const std::vector<double> row = parse_row(line, n, reader.line_no);
            for (std::size_t j = 0; j < n; ++j) block(i, j) = row[j];
        }
    }
    if (reader.next(line)) {
        throw ParseError("unexpected data after the last matrix row", reader.line_no, 1);
    }
    return validate_problem(std::move(blocks[0]), std::move(blocks[1]), std::move(blocks[2]));
}

QbdProblem read_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    return read_problem(in);
}

namespace {

void write_row(std::ostream& out, const DenseMatrix& m, std::size_t i) {
    char buf[40];
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
        if (j) out << ' ';
        out << buf;
    }
    out << '\n';
}

}  // namespace

void write_problem(const QbdProblem& p, std::ostream& out) {
    out << p.n() << '\n';
    for (const DenseMatrix* block : {&p.a(), &p.b(), &p.c()}) {
        for (std::size_t i = 0; i < p.n(); ++i) write_row(out, *block, i);
    }
}

void write_problem(const QbdProblem& p, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // keep LF endings everywhere
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing", 0, 0);
    write_problem(p, out);
    out.flush();
    if (!out) throw ParseError("write to '" + path.string() + "' failed", 0, 0);
}

void write_matrix(const DenseMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing", 0, 0);
    out << m.rows() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) write_row(out, m, i);
    out.flush();
    if (!out) throw ParseError("write to '" + path.string() + "' failed", 0, 0);
}

}  // namespace qme
