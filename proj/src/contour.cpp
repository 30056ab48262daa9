#include "feastlab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace feastlab {

SearchInterval::SearchInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi))
        throw std::invalid_argument("SearchInterval: require lo < hi, got [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("gauss_legendre: n must be in [1, 64], got " +
                                    std::to_string(n));
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double pi = std::acos(-1.0);
    const int half = (n + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        // Chebyshev-based initial guess for the i-th root
        double z = std::cos(pi * (i - 0.25) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[n - i] = z;
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[i - 1] = w;
        rule.weights[n - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // odd rules have an exact center node
    return rule;
}

ContourRule build_contour_rule(const SearchInterval& interval, int n_c) {
    const GaussLegendreRule gl = gauss_legendre(n_c);
    const double c = interval.center();
    const double r = interval.radius();
    const double pi = std::acos(-1.0);

    ContourRule rule{interval, {}, {}};
    rule.nodes.resize(n_c);
    rule.weights.resize(n_c);
    for (int k = 0; k < n_c; ++k) {
        double theta = 0.5 * pi * (gl.nodes[k] + 1.0);
        std::complex<double> e{std::cos(theta), std::sin(theta)};
        rule.nodes[k] = c + r * e;
        rule.weights[k] = 0.5 * gl.weights[k] * r * e;
    }
    return rule;
}

ContourRule contour_rule_from_nodes(const SearchInterval& interval,
                                    std::vector<std::complex<double>> nodes,
                                    std::vector<std::complex<double>> weights) {
    if (nodes.empty() || nodes.size() != weights.size())
        throw std::invalid_argument("contour_rule_from_nodes: node/weight size mismatch");
    for (const auto& z : nodes)
        if (!(z.imag() > 0.0))
            throw std::invalid_argument(
                "contour_rule_from_nodes: all nodes must have Im(z) > 0");
    return ContourRule{interval, std::move(nodes), std::move(weights)};
}

double filter_value(const ContourRule& rule, double lambda) {
    double sum = 0.0;
    for (int k = 0; k < rule.num_points(); ++k)
        sum += std::real(rule.weights[k] / (rule.nodes[k] - lambda));
    return sum;
}

std::vector<std::pair<double, double>> filter_sweep(const ContourRule& rule,
                                                    double lo, double hi,
                                                    int points) {
    if (!(lo < hi)) throw std::invalid_argument("filter_sweep: require lo < hi");
    if (points < 2) throw std::invalid_argument("filter_sweep: require points >= 2");
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    for (int i = 0; i < points; ++i) {
        double lambda = lo + (hi - lo) * i / (points - 1);
        out.emplace_back(lambda, filter_value(rule, lambda));
    }
    return out;
}

void write_filter_sweep_csv(std::ostream& os,
                            const std::vector<std::pair<double, double>>& sweep) {
    os << "lambda,rho\n";
    char buf[128];
    for (const auto& [lambda, rho] : sweep) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", lambda, rho);
        os << buf;
    }
}

double predicted_rate(const ContourRule& rule, const std::vector<double>& spectrum,
                      int m0) {
    if (m0 < 1) throw std::invalid_argument("predicted_rate: m0 must be >= 1");
    if (m0 >= static_cast<int>(spectrum.size()))
        throw std::invalid_argument("predicted_rate: m0 must be < spectrum size");
    std::vector<double> rho(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        rho[i] = filter_value(rule, spectrum[i]);
    std::sort(rho.begin(), rho.end(), std::greater<double>());
    return rho[m0] / rho[m0 - 1];
}

}  // namespace feastlab
