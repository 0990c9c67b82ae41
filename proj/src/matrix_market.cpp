#include "expmc/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace expmc {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line,
                             const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

bool parse_u64(const char*& p, const char* end, std::uint64_t& out) {
    p = skip_ws(p, end);
    auto [next, ec] = std::from_chars(p, end, out);
    if (ec != std::errc{} || next == p) return false;
    p = next;
    return true;
}

bool parse_double(const char*& p, const char* end, double& out) {
    p = skip_ws(p, end);
    auto [next, ec] = std::from_chars(p, end, out);
    if (ec != std::errc{} || next == p) return false;
    p = next;
    return true;
}

}  // namespace

SparseSymmetric load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) parse_fail(path, 1, "empty file");
    ++lineno;
    std::istringstream banner(lower(line));
    std::string magic, object, format, field, symmetry;
    banner >> magic >> object >> format >> field >> symmetry;
    if (magic != "%%matrixmarket" || object != "matrix") {
        parse_fail(path, lineno, "not a MatrixMarket matrix file");
    }
    if (format != "coordinate") {
        parse_fail(path, lineno, "unsupported format '" + format +
                                     "' (coordinate only)");
    }
    const bool pattern = field == "pattern";
    if (!pattern && field != "real" && field != "integer") {
        parse_fail(path, lineno, "unsupported field '" + field + "'");
    }
    const bool general = symmetry == "general";
    if (!general && symmetry != "symmetric") {
        parse_fail(path, lineno, "unsupported symmetry '" + symmetry + "'");
    }

    // Size line, after any leading comments.
    std::uint64_t rows = 0, cols = 0, nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) {
            parse_fail(path, lineno + 1, "missing size line");
        }
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        if (!parse_u64(p, end, rows) || !parse_u64(p, end, cols) ||
            !parse_u64(p, end, nnz)) {
            parse_fail(path, lineno, "malformed size line");
        }
        break;
    }
    if (rows == 0 || cols == 0) parse_fail(path, lineno, "zero dimension");
    if (rows != cols) {
        parse_fail(path, lineno, "matrix is not square (" +
                                     std::to_string(rows) + " x " +
                                     std::to_string(cols) + ")");
    }
    const std::size_t n = rows;

    std::vector<Entry> raw;
    raw.reserve(nnz);
    std::uint64_t seen = 0;
    while (seen < nnz) {
        if (!std::getline(in, line)) {
            parse_fail(path, lineno + 1,
                       "unexpected end of file: expected " +
                           std::to_string(nnz) + " entries, got " +
                           std::to_string(seen));
        }
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        std::uint64_t i = 0, j = 0;
        double w = 1.0;
        if (!parse_u64(p, end, i) || !parse_u64(p, end, j)) {
            parse_fail(path, lineno, "malformed entry");
        }
        if (!pattern && !parse_double(p, end, w)) {
            parse_fail(path, lineno, "malformed entry value");
        }
        if (i == 0 || j == 0 || i > n || j > n) {
            parse_fail(path, lineno, "index out of range");
        }
        raw.push_back({static_cast<NodeId>(i - 1),
                       static_cast<NodeId>(j - 1), w});
        ++seen;
    }

    if (!general) {
        return SparseSymmetric::from_entries(n, std::move(raw));
    }

    // General header: both triangles are listed; fold them and demand that
    // the two copies of every off-diagonal entry match exactly.
    for (auto& e : raw) {
        if (e.row > e.col) std::swap(e.row, e.col);
    }
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Entry> folded;
    folded.reserve(raw.size() / 2 + n);
    for (std::size_t k = 0; k < raw.size();) {
        const Entry& e = raw[k];
        std::size_t run = 1;
        while (k + run < raw.size() && raw[k + run].row == e.row &&
               raw[k + run].col == e.col) {
            ++run;
        }
        if (e.row == e.col) {
            if (run != 1) {
                parse_fail(path, lineno, "duplicate diagonal entry (" +
                                             std::to_string(e.row + 1) + ", " +
                                             std::to_string(e.col + 1) + ")");
            }
        } else {
            if (run != 2 || raw[k].weight != raw[k + 1].weight) {
                parse_fail(path, lineno,
                           "general matrix is not symmetric at (" +
                               std::to_string(e.row + 1) + ", " +
                               std::to_string(e.col + 1) + ")");
            }
        }
        folded.push_back(e);
        k += run;
    }
    return SparseSymmetric::from_entries(n, std::move(folded));
}

void write_matrix_market(const SparseSymmetric& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for write");

    bool pattern = true;
    for (const auto& e : a.entries()) {
        if (e.weight != 1.0) {
            pattern = false;
            break;
        }
    }

    out << "%%MatrixMarket matrix coordinate "
        << (pattern ? "pattern" : "real") << " symmetric\n";
    out << a.size() << " " << a.size() << " " << a.entries().size() << "\n";

    char buf[64];
    for (const auto& e : a.entries()) {
        // Lower triangle on disk, 1-based.
        out << (e.col + 1) << " " << (e.row + 1);
        if (!pattern) {
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), e.weight);
            (void)ec;
            out << " " << std::string_view(buf, end - buf);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace expmc
