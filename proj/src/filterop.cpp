#include "feastlab/filterop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace feastlab {

NodeFactorization::NodeFactorization(const SymmetricMatrix& A, std::complex<double> z,
                                     int node_index)
    : z_(z), node_index_(node_index) {
    Eigen::MatrixXcd shifted = (-A.mat()).cast<std::complex<double>>();
    shifted.diagonal().array() += z;
    lu_.compute(shifted);
    const auto& U_diag = lu_.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < U_diag.size(); ++i) {
        double d = std::abs(U_diag[i]);
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::runtime_error("factorize_node: singular factorization at node " +
                                     std::to_string(node_index_) + " (z = " +
                                     std::to_string(z.real()) + "+" +
                                     std::to_string(z.imag()) + "i)");
    }
}

Eigen::MatrixXcd NodeFactorization::solve(const Eigen::MatrixXd& X) const {
    return lu_.solve(X.cast<std::complex<double>>().eval());
}

Eigen::MatrixXcd NodeFactorization::solve(const Eigen::MatrixXcd& X) const {
    return lu_.solve(X);
}

NodeFactorization factorize_node(const SymmetricMatrix& A, std::complex<double> z) {
    return NodeFactorization(A, z);
}

namespace {

void check_block(const SymmetricMatrix& A, const Eigen::MatrixXd& X) {
    if (X.rows() != A.dim())
        throw std::invalid_argument("apply_filter: block dimension " +
                                    std::to_string(X.rows()) + " != matrix dimension " +
                                    std::to_string(A.dim()));
    if (X.cols() < 1) throw std::invalid_argument("apply_filter: block must have p >= 1");
}

}  // namespace

Eigen::MatrixXd apply_filter(const SymmetricMatrix& A, const ContourRule& rule,
                             const Eigen::MatrixXd& X, SolveAccounting& accounting) {
    FilterApplier applier(A, rule);
    return applier.apply(X, accounting);
}

FilterApplier::FilterApplier(const SymmetricMatrix& A, const ContourRule& rule,
                             bool cache_factorizations)
    : A_(A), rule_(rule), cache_(cache_factorizations) {
    if (cache_) cached_.resize(rule.num_points());
}

Eigen::MatrixXd FilterApplier::apply(const Eigen::MatrixXd& X, SolveAccounting& accounting) {
    check_block(A_, X);
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(X.rows(), X.cols());
    for (int k = 0; k < rule_.num_points(); ++k) {
        const NodeFactorization* fact;
        std::unique_ptr<NodeFactorization> local;
        if (cache_) {
            if (!cached_[k]) {
                cached_[k] = std::make_unique<NodeFactorization>(A_, rule_.nodes[k], k);
                ++accounting.factorizations;
            }
            fact = cached_[k].get();
        } else {
            local = std::make_unique<NodeFactorization>(A_, rule_.nodes[k], k);
            ++accounting.factorizations;
            fact = local.get();
        }
        // real part per node folds in the conjugate lower-half contribution
        Y.noalias() += (rule_.weights[k] * fact->solve(X)).real();
    }
    accounting.rhs_solved += static_cast<long long>(rule_.num_points()) * X.cols();
    return Y;
}

}  // namespace feastlab
