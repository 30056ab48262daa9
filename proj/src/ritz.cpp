#include "feastlab/ritz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace feastlab {

CholeskyError::CholeskyError(double pivot_, int index_)
    : std::runtime_error("rayleigh_ritz: B' not numerically SPD, pivot " +
                         std::to_string(pivot_) + " at index " + std::to_string(index_)),
      pivot(pivot_),
      index(index_) {}

std::pair<Eigen::MatrixXd, int> orthonormalize(const Eigen::MatrixXd& X, double drop_tol,
                                               Orthogonalizer method) {
    if (X.cols() < 1 || X.rows() < 1)
        throw std::invalid_argument("orthonormalize: empty block");

    if (method == Orthogonalizer::qr) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        qr.setThreshold(drop_tol);
        int rank = static_cast<int>(qr.rank());
        if (rank == 0) throw std::runtime_error("orthonormalize: block is numerically zero");
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(X.rows(), rank);
        return {std::move(Q), rank};
    }

    // Gram-matrix route: X^T X = V S^2 V^T, U = X V S^{-1}
    Eigen::MatrixXd G = X.transpose() * X;
    G = 0.5 * (G + G.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    const Eigen::VectorXd& evals = es.eigenvalues();  // ascending
    const int p = static_cast<int>(X.cols());
    const double sigma_max = std::sqrt(std::max(0.0, evals[p - 1]));
    if (!(sigma_max > 0.0))
        throw std::runtime_error("orthonormalize: block is numerically zero");

    // Gram eigenvalues below machine noise carry no directional information
    // even when their square roots clear drop_tol, so threshold on the
    // eigenvalues with an eps-based floor.
    const double ev_floor = std::max(drop_tol * drop_tol,
                                     std::numeric_limits<double>::epsilon() * p) *
                            evals[p - 1];
    std::vector<int> keep;
    for (int i = p - 1; i >= 0; --i)
        if (evals[i] > ev_floor) keep.push_back(i);
    const int rank = static_cast<int>(keep.size());
    if (rank == 0) throw std::runtime_error("orthonormalize: block is numerically zero");

    Eigen::MatrixXd U(X.rows(), rank);
    for (int j = 0; j < rank; ++j) {
        double sigma = std::sqrt(evals[keep[j]]);
        U.col(j) = X * es.eigenvectors().col(keep[j]) / sigma;
    }
    return {std::move(U), rank};
}

namespace {

// Lower Cholesky that reports the first non-positive pivot.
Eigen::MatrixXd cholesky_or_throw(const Eigen::MatrixXd& B) {
    const int p = static_cast<int>(B.rows());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(p, p);
    for (int j = 0; j < p; ++j) {
        double s = B(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (!(s > 0.0) || !std::isfinite(s)) throw CholeskyError(s, j);
        L(j, j) = std::sqrt(s);
        for (int i = j + 1; i < p; ++i) {
            double t = B(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    return L;
}

}  // namespace

RitzSet rayleigh_ritz(const SymmetricMatrix& A, const Eigen::MatrixXd& X,
                      const SearchInterval& interval) {
    if (X.rows() != A.dim())
        throw std::invalid_argument("rayleigh_ritz: block/matrix dimension mismatch");
    const int p = static_cast<int>(X.cols());
    if (p < 1) throw std::invalid_argument("rayleigh_ritz: empty block");

    Eigen::MatrixXd AX = A.mat() * X;
    Eigen::MatrixXd Ap = X.transpose() * AX;
    Eigen::MatrixXd Bp = X.transpose() * X;
    Ap = 0.5 * (Ap + Ap.transpose().eval());
    Bp = 0.5 * (Bp + Bp.transpose().eval());

    Eigen::MatrixXd L = cholesky_or_throw(Bp);
    Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(Ap);
    Eigen::MatrixXd C = L.triangularView<Eigen::Lower>().solve(T.transpose().eval());
    C = 0.5 * (C + C.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    Eigen::MatrixXd Q =
        L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());

    RitzSet out;
    out.values = es.eigenvalues();
    out.vectors = X * Q;
    out.residual_norms.resize(p);
    out.inside_flags.resize(p);
    for (int k = 0; k < p; ++k) {
        double norm = out.vectors.col(k).norm();
        out.vectors.col(k) /= norm;
        out.inside_flags[k] = interval.contains(out.values[k]);
    }
    Eigen::MatrixXd R = A.mat() * out.vectors - out.vectors * out.values.asDiagonal();
    for (int k = 0; k < p; ++k) out.residual_norms[k] = R.col(k).norm();
    return out;
}

Eigen::MatrixXd compute_residual_block(const SymmetricMatrix& A, const RitzSet& ritz) {
    return A.mat() * ritz.vectors - ritz.vectors * ritz.values.asDiagonal();
}

RitzSet select_pairs(const RitzSet& ritz, const SelectionPolicy& policy) {
    if (ritz.size() == 0) throw std::invalid_argument("select_pairs: empty RitzSet");
    const double c = policy.interval.center();

    auto by_residual = [&](int a, int b) {
        if (ritz.residual_norms[a] != ritz.residual_norms[b])
            return ritz.residual_norms[a] < ritz.residual_norms[b];
        double da = std::abs(ritz.values[a] - c), db = std::abs(ritz.values[b] - c);
        if (da != db) return da < db;
        return a < b;
    };

    std::vector<int> inside, outside;
    for (int k = 0; k < ritz.size(); ++k)
        (ritz.inside_flags[k] ? inside : outside).push_back(k);
    std::sort(inside.begin(), inside.end(), by_residual);
    std::sort(outside.begin(), outside.end(), by_residual);

    std::vector<int> chosen;
    const int m0 = policy.target_count;
    for (int k : inside) {
        if (static_cast<int>(chosen.size()) >= m0) break;
        chosen.push_back(k);
    }
    for (int k : outside) {
        if (static_cast<int>(chosen.size()) >= m0) break;
        chosen.push_back(k);
    }

    RitzSet out;
    const int sz = static_cast<int>(chosen.size());
    out.values.resize(sz);
    out.vectors.resize(ritz.vectors.rows(), sz);
    out.residual_norms.resize(sz);
    out.inside_flags.resize(sz);
    for (int j = 0; j < sz; ++j) {
        out.values[j] = ritz.values[chosen[j]];
        out.vectors.col(j) = ritz.vectors.col(chosen[j]);
        out.residual_norms[j] = ritz.residual_norms[chosen[j]];
        out.inside_flags[j] = ritz.inside_flags[chosen[j]];
    }
    return out;
}

int count_inside(const RitzSet& ritz) {
    return static_cast<int>(std::count(ritz.inside_flags.begin(), ritz.inside_flags.end(), true));
}

}  // namespace feastlab
