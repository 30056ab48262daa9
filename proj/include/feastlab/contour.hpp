#pragma once

#include <complex>
#include <utility>
#include <vector>
#include <iosfwd>

namespace feastlab {

/// Real search interval (lo, hi). Membership is open: endpoints are outside.
struct SearchInterval {
    double lo;
    double hi;

    SearchInterval(double lo_, double hi_);

    double center() const { return 0.5 * (lo + hi); }
    double radius() const { return 0.5 * (hi - lo); }
    bool contains(double x) const { return x > lo && x < hi; }
};

struct GaussLegendreRule {
    std::vector<double> nodes;    // ascending in (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes/weights on (-1,1), Newton iteration on the Legendre
/// recurrence. Supported range 1 <= n <= 64.
GaussLegendreRule gauss_legendre(int n);

/// Quadrature discretization of the circular contour around an interval.
/// Only upper half-plane nodes are stored; the conjugate half is folded in
/// by taking real parts when the rule is applied.
struct ContourRule {
    SearchInterval interval;
    std::vector<std::complex<double>> nodes;    // z_k, Im(z_k) > 0
    std::vector<std::complex<double>> weights;  // omega_k

    int num_points() const { return static_cast<int>(nodes.size()); }
};

/// Circular contour with center (lo+hi)/2 and radius (hi-lo)/2, discretized
/// with an n_c-point Gauss-Legendre rule on the upper semicircle:
///   theta_k = (pi/2)(g_k + 1),  z_k = c + r e^{i theta_k},
///   omega_k = (w_k/2) r e^{i theta_k}.
ContourRule build_contour_rule(const SearchInterval& interval, int n_c);

/// Extension hook: wrap externally supplied node/weight lists. All nodes must
/// lie strictly in the upper half-plane.
ContourRule contour_rule_from_nodes(const SearchInterval& interval,
                                    std::vector<std::complex<double>> nodes,
                                    std::vector<std::complex<double>> weights);

/// Scalar rational filter rho(lambda) = sum_k Re(omega_k / (z_k - lambda)).
/// ~1 inside the interval, decaying outside.
double filter_value(const ContourRule& rule, double lambda);

/// Uniform sample of filter_value over [lo, hi], inclusive of both ends.
std::vector<std::pair<double, double>> filter_sweep(const ContourRule& rule,
                                                    double lo, double hi,
                                                    int points);

/// CSV emission for a sweep, header "lambda,rho", 17 significant digits.
void write_filter_sweep_csv(std::ostream& os,
                            const std::vector<std::pair<double, double>>& sweep);

/// Worst-case per-iteration error contraction factor for a subspace of size
/// m0: rank eigenvalues by descending rho and return rho at rank m0+1 over
/// rho at rank m0.
double predicted_rate(const ContourRule& rule, const std::vector<double>& spectrum,
                      int m0);

}  // namespace feastlab
