#pragma once

#include <stdexcept>
#include <vector>

#include "feastlab/contour.hpp"
#include "feastlab/matmodel.hpp"

namespace feastlab {

/// Ritz pairs with residual norms and interval membership flags.
struct RitzSet {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // unit-norm columns
    Eigen::VectorXd residual_norms;
    std::vector<bool> inside_flags;

    int size() const { return static_cast<int>(values.size()); }
};

struct SelectionPolicy {
    int target_count;  // m0
    SearchInterval interval;
};

/// B' = X'^T X' is not numerically SPD; carries the offending pivot.
struct CholeskyError : std::runtime_error {
    CholeskyError(double pivot_, int index_);
    double pivot;
    int index;
};

enum class Orthogonalizer { svd, qr };

/// Orthonormal basis of span(X'), dropping directions with singular value
/// <= drop_tol * sigma_max. The svd route diagonalizes the Gram matrix
/// X'^T X' = V S^2 V^T and forms U = X' V S^{-1}; qr uses column-pivoted
/// Householder QR.
std::pair<Eigen::MatrixXd, int> orthonormalize(const Eigen::MatrixXd& X, double drop_tol,
                                               Orthogonalizer method = Orthogonalizer::svd);

/// Reduced generalized problem A' q = lambda B' q with A' = X'^T A X',
/// B' = X'^T X', solved by Cholesky reduction B' = L L^T and a standard
/// symmetric eigensolve of L^{-1} A' L^{-T}. Ritz vectors are normalized;
/// residual norms and open-interval flags are filled in.
RitzSet rayleigh_ritz(const SymmetricMatrix& A, const Eigen::MatrixXd& X,
                      const SearchInterval& interval);

/// Column k is A x_k - lambda_k x_k.
Eigen::MatrixXd compute_residual_block(const SymmetricMatrix& A, const RitzSet& ritz);

/// Keep inside pairs first (lowest residuals win past m0); fill up to m0 from
/// outside pairs in ascending residual order. Ties break toward the interval
/// center.
RitzSet select_pairs(const RitzSet& ritz, const SelectionPolicy& policy);

int count_inside(const RitzSet& ritz);

}  // namespace feastlab
