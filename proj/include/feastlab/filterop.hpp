#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "feastlab/contour.hpp"
#include "feastlab/matmodel.hpp"

namespace feastlab {

/// Cumulative linear-solve cost counters. rhs_solved grows by n_c * p per
/// filter application (p = number of block columns).
struct SolveAccounting {
    long long rhs_solved = 0;
    long long factorizations = 0;
};

/// Dense complex LU of (z I - A), reusable for any number of right-hand
/// side blocks at the same node.
class NodeFactorization {
public:
    NodeFactorization(const SymmetricMatrix& A, std::complex<double> z, int node_index = -1);

    /// W with (z I - A) W = X, per-column residual <= 1e-10 ||X||.
    Eigen::MatrixXcd solve(const Eigen::MatrixXd& X) const;
    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& X) const;

    std::complex<double> shift() const { return z_; }

private:
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
    std::complex<double> z_;
    int node_index_;
};

NodeFactorization factorize_node(const SymmetricMatrix& A, std::complex<double> z);

/// Y = sum_k Re(omega_k (z_k I - A)^{-1} X), accumulated in ascending node
/// order. One factorization per node, shared by all p right-hand sides.
Eigen::MatrixXd apply_filter(const SymmetricMatrix& A, const ContourRule& rule,
                             const Eigen::MatrixXd& X, SolveAccounting& accounting);

/// Repeated filter applications against a fixed (A, rule). With
/// cache_factorizations the per-node LU factors are computed once and reused
/// across applications; results and rhs_solved counts are identical either way.
class FilterApplier {
public:
    FilterApplier(const SymmetricMatrix& A, const ContourRule& rule,
                  bool cache_factorizations = false);

    Eigen::MatrixXd apply(const Eigen::MatrixXd& X, SolveAccounting& accounting);

private:
    const SymmetricMatrix& A_;
    const ContourRule& rule_;
    bool cache_;
    std::vector<std::unique_ptr<NodeFactorization>> cached_;
};

}  // namespace feastlab
