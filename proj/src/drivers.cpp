#include "feastlab/drivers.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace feastlab {

void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
    os << "iter,subspace_dim,rhs_cumulative,max_residual,m_found\n";
    char buf[160];
    for (const auto& rec : trace.records) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%lld,%.17g,%d\n", rec.iter, rec.subspace_dim,
                      rec.rhs_cumulative, rec.max_residual, rec.m_found);
        os << buf;
    }
}

Eigen::MatrixXd make_initial_guess(int n, int m0, std::uint64_t seed) {
    if (m0 < 1 || m0 > n)
        throw std::invalid_argument("make_initial_guess: require 1 <= m0 <= n");
    // offset the stream so a guess never replays the draws of another seeded
    // component that happens to share the same seed value
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd X(n, m0);
    for (int j = 0; j < m0; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (static_cast<int>(qr.rank()) < m0)
        throw std::runtime_error("make_initial_guess: guess block is rank deficient");
    return X;
}

namespace {

void validate_config(const SymmetricMatrix& A, const SolverConfig& config) {
    if (config.m0 < 1 || config.m0 > A.dim())
        throw std::invalid_argument("SolverConfig: require 1 <= m0 <= n");
    if (config.s < 1) throw std::invalid_argument("SolverConfig: require s >= 1");
    if (!(config.tol > 0.0)) throw std::invalid_argument("SolverConfig: require tol > 0");
    if (config.max_iter < 1) throw std::invalid_argument("SolverConfig: require max_iter >= 1");
}

// Indices of inside pairs ordered by ascending residual norm.
std::vector<int> inside_by_residual(const RitzSet& rr) {
    std::vector<int> idx;
    for (int k = 0; k < rr.size(); ++k)
        if (rr.inside_flags[k]) idx.push_back(k);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (rr.residual_norms[a] != rr.residual_norms[b])
            return rr.residual_norms[a] < rr.residual_norms[b];
        return a < b;
    });
    return idx;
}

double max_residual(const RitzSet& rr, const std::vector<int>& idx) {
    double r = 0.0;
    for (int k : idx) r = std::max(r, rr.residual_norms[k]);
    return r;
}

// Copies the given pairs into the solution, sorted ascending by eigenvalue.
void fill_solution(Solution& sol, const RitzSet& rr, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return rr.values[a] < rr.values[b]; });
    const int m = static_cast<int>(idx.size());
    sol.eigenvalues.resize(m);
    sol.eigenvectors.resize(rr.vectors.rows(), m);
    sol.residual_norms.resize(m);
    for (int j = 0; j < m; ++j) {
        sol.eigenvalues[j] = rr.values[idx[j]];
        sol.eigenvectors.col(j) = rr.vectors.col(idx[j]);
        sol.residual_norms[j] = rr.residual_norms[idx[j]];
    }
}

Eigen::MatrixXd hconcat(const std::deque<Eigen::MatrixXd>& blocks) {
    Eigen::Index cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    Eigen::MatrixXd out(blocks.front().rows(), cols);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        out.middleCols(at, b.cols()) = b;
        at += b.cols();
    }
    return out;
}

}  // namespace

Solution feast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                     const SolverConfig& config) {
    validate_config(A, config);
    const ContourRule rule = build_contour_rule(interval, config.n_c);
    FilterApplier filt(A, rule, config.cache_factorizations);

    Solution sol;
    Eigen::MatrixXd X = make_initial_guess(A.dim(), config.m0, config.seed);
    RitzSet rr;
    int last_m_found = 0;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        Eigen::MatrixXd Y = filt.apply(X, sol.accounting);
        int dim;
        if (config.generalized_reduced) {
            rr = rayleigh_ritz(A, Y, interval);
            dim = static_cast<int>(Y.cols());
        } else {
            auto [U, rank] = orthonormalize(Y, config.drop_tol, config.orthogonalizer);
            if (rank < last_m_found)
                throw std::runtime_error(
                    "feast_solve: filtered subspace rank collapsed below the inside "
                    "eigenpair count; m0 may be too small");
            rr = rayleigh_ritz(A, U, interval);
            dim = rank;
        }
        std::vector<int> inside = inside_by_residual(rr);
        double r = max_residual(rr, inside);
        sol.trace.records.push_back(
            {iter, dim, sol.accounting.rhs_solved, r, static_cast<int>(inside.size())});
        sol.iterations = iter;
        last_m_found = static_cast<int>(inside.size());
        if (r <= config.tol) {
            sol.converged = true;
            fill_solution(sol, rr, inside);
            return sol;
        }
        X = rr.vectors;
    }
    fill_solution(sol, rr, inside_by_residual(rr));
    return sol;
}

Solution xfeast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                      const SolverConfig& config) {
    validate_config(A, config);
    if (static_cast<long>(config.s) * config.m0 > A.dim())
        std::fprintf(stderr,
                     "xfeast_solve: warning: s*m0 = %ld exceeds matrix dimension %d\n",
                     static_cast<long>(config.s) * config.m0, A.dim());
    const ContourRule rule = build_contour_rule(interval, config.n_c);
    FilterApplier filt(A, rule, config.cache_factorizations);
    const SelectionPolicy policy{config.m0, interval};

    Solution sol;
    std::deque<Eigen::MatrixXd> window;
    window.push_back(make_initial_guess(A.dim(), config.m0, config.seed));
    // pre-expansion: after the first in-loop filter application the window holds
    // [X0, rho(A)X0, ..., rho(A)^{s-1} X0]
    for (int k = 2; k < config.s; ++k)
        window.push_back(filt.apply(window.back(), sol.accounting));

    Eigen::MatrixXd estimate = window.back();
    RitzSet sel;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        window.push_back(filt.apply(estimate, sol.accounting));
        while (static_cast<int>(window.size()) > config.s) window.pop_front();

        auto [U, rank] = orthonormalize(hconcat(window), config.drop_tol,
                                        config.orthogonalizer);
        RitzSet rr = rayleigh_ritz(A, U, interval);
        sel = select_pairs(rr, policy);

        std::vector<int> inside = inside_by_residual(sel);
        double r = max_residual(sel, inside);
        sol.trace.records.push_back(
            {iter, rank, sol.accounting.rhs_solved, r, static_cast<int>(inside.size())});
        sol.iterations = iter;
        if (r <= config.tol) {
            sol.converged = true;
            fill_solution(sol, sel, inside);
            return sol;
        }
        estimate = sel.vectors;
    }
    fill_solution(sol, sel, inside_by_residual(sel));
    return sol;
}

Solution rfeast_solve(const SymmetricMatrix& A, const SearchInterval& interval,
                      const SolverConfig& config) {
    validate_config(A, config);
    if (static_cast<long>(config.s + 1) * config.m0 > A.dim())
        std::fprintf(stderr,
                     "rfeast_solve: warning: (s+1)*m0 = %ld exceeds matrix dimension %d\n",
                     static_cast<long>(config.s + 1) * config.m0, A.dim());
    const ContourRule rule = build_contour_rule(interval, config.n_c);
    FilterApplier filt(A, rule, config.cache_factorizations);
    const SelectionPolicy policy{config.m0, interval};

    Solution sol;
    Eigen::MatrixXd X = make_initial_guess(A.dim(), config.m0, config.seed);
    RitzSet sel;
    int m_expected = 0;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        Eigen::MatrixXd Xp = filt.apply(X, sol.accounting);
        int dim = static_cast<int>(Xp.cols());

        for (int j = 1; j <= config.s; ++j) {
            RitzSet rr;
            try {
                rr = rayleigh_ritz(A, Xp, interval);
            } catch (const CholeskyError&) {
                // residual-block orthogonality degraded by roundoff: recover by
                // orthonormalizing the expanded subspace once
                ++sol.recovery_events;
                auto [U, rank] = orthonormalize(Xp, config.drop_tol, config.orthogonalizer);
                Xp = std::move(U);
                rr = rayleigh_ritz(A, Xp, interval);
            }
            // the j=1 subspace is the plain FEAST one: count before spurious
            // pairs can appear
            if (j == 1) m_expected = count_inside(rr);
            sel = select_pairs(rr, policy);
            if (j < config.s) {
                Eigen::MatrixXd R = compute_residual_block(A, sel);
                Eigen::MatrixXd expanded(Xp.rows(), Xp.cols() + R.cols());
                expanded << Xp, R;
                Xp = std::move(expanded);
                dim = static_cast<int>(Xp.cols());
            }
        }

        std::vector<int> inside = inside_by_residual(sel);
        if (static_cast<int>(inside.size()) > m_expected)
            inside.resize(m_expected);  // drop spurious inside pairs
        double r = max_residual(sel, inside);
        sol.trace.records.push_back({iter, dim, sol.accounting.rhs_solved, r, m_expected});
        sol.iterations = iter;
        if (r <= config.tol) {
            sol.converged = true;
            fill_solution(sol, sel, inside);
            return sol;
        }
        X = sel.vectors;
    }
    {
        std::vector<int> inside = inside_by_residual(sel);
        if (static_cast<int>(inside.size()) > m_expected) inside.resize(m_expected);
        fill_solution(sol, sel, inside);
    }
    return sol;
}

}  // namespace feastlab
