#include "feastlab/matrix_market.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace feastlab {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Reads the next non-comment, non-blank line; returns false at EOF.
bool next_data_line(std::istream& in, std::string& line, int& line_number) {
    while (std::getline(in, line)) {
        ++line_number;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

}  // namespace

SymmetricMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_matrix_market: cannot open '" + path + "'");

    int line_number = 0;
    std::string line;
    if (!std::getline(in, line))
        throw MatrixMarketError("read_matrix_market: empty file", 1);
    ++line_number;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket")
        throw MatrixMarketError("read_matrix_market: missing %%MatrixMarket banner", 1);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix")
        throw MatrixMarketError("read_matrix_market: unsupported object '" + object + "'", 1);
    if (format != "coordinate" && format != "array")
        throw MatrixMarketError("read_matrix_market: unsupported format '" + format + "'", 1);
    if (field != "real")
        throw MatrixMarketError("read_matrix_market: unsupported field '" + field + "'", 1);
    if (symmetry != "symmetric")
        throw NotSymmetricError("read_matrix_market: expected symmetry 'symmetric', got '" +
                                    symmetry + "'",
                                1);

    if (!next_data_line(in, line, line_number))
        throw MatrixMarketError("read_matrix_market: missing size line", line_number);

    if (format == "coordinate") {
        long rows, cols, nnz;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz))
            throw MatrixMarketError("read_matrix_market: malformed size line", line_number);
        if (rows != cols || rows < 1)
            throw MatrixMarketError("read_matrix_market: matrix must be square", line_number);

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
        for (long e = 0; e < nnz; ++e) {
            if (!next_data_line(in, line, line_number))
                throw MatrixMarketError("read_matrix_market: unexpected end of file", line_number);
            long i, j;
            double v;
            std::istringstream es(line);
            if (!(es >> i >> j >> v))
                throw MatrixMarketError("read_matrix_market: malformed entry", line_number);
            if (i < 1 || i > rows || j < 1 || j > cols)
                throw MatrixMarketError("read_matrix_market: index out of range", line_number);
            if (j > i)
                throw MatrixMarketError(
                    "read_matrix_market: upper-triangle entry in symmetric file", line_number);
            M(i - 1, j - 1) = v;
            M(j - 1, i - 1) = v;
        }
        return SymmetricMatrix(std::move(M));
    }

    // array symmetric: packed lower triangle, column major
    long rows, cols;
    std::istringstream sz(line);
    if (!(sz >> rows >> cols))
        throw MatrixMarketError("read_matrix_market: malformed size line", line_number);
    if (rows != cols || rows < 1)
        throw MatrixMarketError("read_matrix_market: matrix must be square", line_number);

    Eigen::MatrixXd M(rows, cols);
    for (long j = 0; j < cols; ++j) {
        for (long i = j; i < rows; ++i) {
            if (!next_data_line(in, line, line_number))
                throw MatrixMarketError("read_matrix_market: unexpected end of file", line_number);
            double v;
            std::istringstream es(line);
            if (!(es >> v))
                throw MatrixMarketError("read_matrix_market: malformed value", line_number);
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    return SymmetricMatrix(std::move(M));
}

void write_matrix_market(const SymmetricMatrix& matrix, const std::string& path,
                         MatrixMarketFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_market: cannot open '" + path + "'");
    const int n = matrix.dim();
    char buf[192];

    if (format == MatrixMarketFormat::coordinate) {
        out << "%%MatrixMarket matrix coordinate real symmetric\n";
        out << n << " " << n << " " << static_cast<long>(n) * (n + 1) / 2 << "\n";
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i) {
                std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, j + 1, matrix(i, j));
                out << buf;
            }
    } else {
        out << "%%MatrixMarket matrix array real symmetric\n";
        out << n << " " << n << "\n";
        for (int j = 0; j < n; ++j)
            for (int i = j; i < n; ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g\n", matrix(i, j));
                out << buf;
            }
    }
    if (!out) throw std::runtime_error("write_matrix_market: write failed for '" + path + "'");
}

}  // namespace feastlab
