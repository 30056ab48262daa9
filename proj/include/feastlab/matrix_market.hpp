#pragma once

#include <stdexcept>
#include <string>

#include "feastlab/matmodel.hpp"

namespace feastlab {

struct MatrixMarketError : std::runtime_error {
    MatrixMarketError(const std::string& msg, int line_number)
        : std::runtime_error(msg + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    int line;
};

/// Header declares a storage scheme other than symmetric.
struct NotSymmetricError : MatrixMarketError {
    using MatrixMarketError::MatrixMarketError;
};

enum class MatrixMarketFormat { coordinate, array };

/// Reads "%%MatrixMarket matrix coordinate real symmetric" or
/// "... array real symmetric" files. Coordinate entries are expected in the
/// lower triangle and mirrored; array files hold the packed lower triangle
/// column by column.
SymmetricMatrix read_matrix_market(const std::string& path);

/// Writes the lower triangle at 17 significant digits; write-then-read
/// reproduces entries exactly.
void write_matrix_market(const SymmetricMatrix& matrix, const std::string& path,
                         MatrixMarketFormat format = MatrixMarketFormat::coordinate);

}  // namespace feastlab
