#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "feastlab/contour.hpp"

namespace feastlab {

/// Dense real-symmetric operator. Symmetry is enforced exactly at
/// construction; instances are immutable afterwards.
class SymmetricMatrix {
public:
    /// Accepts a matrix that is symmetric to within `sym_tol` relative and
    /// symmetrizes it exactly as (M + M^T)/2.
    explicit SymmetricMatrix(Eigen::MatrixXd entries, double sym_tol = 1e-12);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXd& mat() const { return mat_; }
    double operator()(int i, int j) const { return mat_(i, j); }

private:
    Eigen::MatrixXd mat_;
};

enum class Placement { uniform, clustered };

/// Prescription for a synthetic eigenspectrum: inside_count eigenvalues in
/// inside_interval, outside_count in outside_interval, with uniform or
/// clustered placement of the outside group.
struct SpectrumLayout {
    int n;
    SearchInterval inside_interval;
    int inside_count;
    SearchInterval outside_interval;
    int outside_count;
    Placement placement = Placement::uniform;
    int num_clusters = 1;
    double cluster_width = 0.0;
    std::uint64_t seed = 0;
};

/// Ground-truth eigendecomposition: ascending eigenvalues and an orthogonal
/// eigenvector matrix (Q^T Q = I to 1e-12 per entry).
struct EigenDecomposition {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // n x n orthogonal
};

/// Place eigenvalues per the layout and pair them with a seeded random
/// orthogonal matrix. Deterministic for a fixed seed.
///
/// "uniform" spaces values equally across the interval including both
/// endpoints; "clustered" splits the outside group into num_clusters
/// equal-count clusters of width cluster_width with uniformly spaced centers.
EigenDecomposition generate_spectrum(const SpectrumLayout& layout);

/// A = Q diag(values) Q^T, symmetrized exactly.
SymmetricMatrix assemble_matrix(const EigenDecomposition& decomp);

/// Count of eigenvalues strictly inside the open interval.
int true_count_in_interval(const EigenDecomposition& decomp,
                           const SearchInterval& interval);

}  // namespace feastlab
