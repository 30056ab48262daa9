#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "feastlab/filterop.hpp"
#include "feastlab/ritz.hpp"

namespace feastlab {

struct SolverConfig {
    int m0 = 1;           // base subspace size
    int n_c = 8;          // quadrature points
    int s = 1;            // xfeast: stored subspaces; rfeast: inner Rayleigh-Ritz sweeps
    double tol = 1e-12;   // convergence tolerance on max inside residual
    int max_iter = 50;
    std::uint64_t seed = 42;
    Orthogonalizer orthogonalizer = Orthogonalizer::svd;
    double drop_tol = 1e-10;
    bool cache_factorizations = false;  // reuse per-node LU across iterations
    bool generalized_reduced = false;   // feast: literal generalized reduced solve,
                                        // skipping the pre-Rayleigh-Ritz orthonormalization
};

struct TraceRecord {
    int iter;
    int subspace_dim;
    long long rhs_cumulative;
    double max_residual;
    int m_found;
};

struct ConvergenceTrace {
    std::vector<TraceRecord> records;
};

/// CSV with header "iter,subspace_dim,rhs_cumulative,max_residual,m_found",
/// residuals at 17 significant digits.
void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace);

struct Solution {
    Eigen::VectorXd eigenvalues;   // inside the interval, ascending
    Eigen::MatrixXd eigenvectors;  // unit-norm columns
    Eigen::VectorXd residual_norms;
    bool converged = false;
    int iterations = 0;
    SolveAccounting accounting;
    ConvergenceTrace trace;
    int recovery_events = 0;  // rfeast re-orthonormalization fallbacks
};

/// Seeded standard-Gaussian n x m0 block, deterministic per seed.
Eigen::MatrixXd make_initial_guess(int n, int m0, std::uint64_t seed);

/// Plain FEAST subspace iteration: filter, orthonormalize, Rayleigh-Ritz,
/// check max residual over pairs inside the interval.
Solution feast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                     const SolverConfig& config);

/// FEAST with the subspace expanded by a sliding window of the s most recent
/// filtered blocks (Krylov-style in powers of the filter).
Solution xfeast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                      const SolverConfig& config);

/// FEAST with the subspace expanded by appending eigenvector residual blocks
/// over s inner Rayleigh-Ritz sweeps per filter application.
Solution rfeast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                      const SolverConfig& config);

}  // namespace feastlab
