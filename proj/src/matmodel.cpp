#include "feastlab/matmodel.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace feastlab {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd entries, double sym_tol) {
    if (entries.rows() < 1 || entries.rows() != entries.cols())
        throw std::invalid_argument("SymmetricMatrix: matrix must be square, n >= 1");
    const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
    const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
    if (asym > sym_tol * scale)
        throw std::invalid_argument("SymmetricMatrix: input not symmetric (max |A - A^T| = " +
                                    std::to_string(asym) + ")");
    mat_ = 0.5 * (entries + entries.transpose().eval());
}

namespace {

void validate_layout(const SpectrumLayout& layout) {
    if (layout.n < 1) throw std::invalid_argument("SpectrumLayout: n must be >= 1");
    if (layout.inside_count < 1)
        throw std::invalid_argument("SpectrumLayout: inside_count must be >= 1");
    if (layout.outside_count < 0)
        throw std::invalid_argument("SpectrumLayout: outside_count must be >= 0");
    if (layout.inside_count + layout.outside_count != layout.n)
        throw std::invalid_argument("SpectrumLayout: inside_count + outside_count must equal n");
    if (layout.outside_count > 0) {
        const auto& a = layout.inside_interval;
        const auto& b = layout.outside_interval;
        if (!(a.hi <= b.lo || b.hi <= a.lo))
            throw std::invalid_argument("SpectrumLayout: inside and outside intervals overlap");
    }
    if (layout.placement == Placement::clustered) {
        if (layout.num_clusters < 1)
            throw std::invalid_argument("SpectrumLayout: num_clusters must be >= 1");
        if (!(layout.cluster_width > 0.0))
            throw std::invalid_argument("SpectrumLayout: cluster_width must be > 0");
        if (layout.num_clusters * layout.cluster_width >
            layout.outside_interval.hi - layout.outside_interval.lo)
            throw std::invalid_argument("SpectrumLayout: clusters do not fit in outside interval");
    }
}

// Equally spaced values including both endpoints; a single value sits at the center.
void append_uniform(std::vector<double>& out, double lo, double hi, int count) {
    if (count == 1) {
        out.push_back(0.5 * (lo + hi));
        return;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * i / (count - 1));
}

}  // namespace

EigenDecomposition generate_spectrum(const SpectrumLayout& layout) {
    validate_layout(layout);

    std::vector<double> values;
    values.reserve(layout.n);
    append_uniform(values, layout.inside_interval.lo, layout.inside_interval.hi,
                   layout.inside_count);

    if (layout.outside_count > 0) {
        if (layout.placement == Placement::uniform) {
            append_uniform(values, layout.outside_interval.lo, layout.outside_interval.hi,
                           layout.outside_count);
        } else {
            // Equal-count clusters of width cluster_width, uniformly spaced centers.
            const int k = layout.num_clusters;
            const double w = layout.cluster_width;
            const double c_lo = layout.outside_interval.lo + 0.5 * w;
            const double c_hi = layout.outside_interval.hi - 0.5 * w;
            const int base = layout.outside_count / k;
            const int extra = layout.outside_count % k;
            for (int g = 0; g < k; ++g) {
                double center = (k == 1) ? 0.5 * (c_lo + c_hi)
                                         : c_lo + (c_hi - c_lo) * g / (k - 1);
                int count = base + (g < extra ? 1 : 0);
                if (count > 0)
                    append_uniform(values, center - 0.5 * w, center + 0.5 * w, count);
            }
        }
    }
    std::sort(values.begin(), values.end());

    // Seeded Gaussian block, orthogonalized, columns sign-normalized so the
    // largest-magnitude entry is positive.
    std::mt19937_64 rng(layout.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd G(layout.n, layout.n);
    for (int j = 0; j < layout.n; ++j)
        for (int i = 0; i < layout.n; ++i) G(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(layout.n, layout.n);
    for (int j = 0; j < layout.n; ++j) {
        int imax;
        Q.col(j).cwiseAbs().maxCoeff(&imax);
        if (Q(imax, j) < 0.0) Q.col(j) = -Q.col(j);
    }

    EigenDecomposition decomp;
    decomp.values = Eigen::Map<Eigen::VectorXd>(values.data(), layout.n);
    decomp.vectors = std::move(Q);
    return decomp;
}

SymmetricMatrix assemble_matrix(const EigenDecomposition& decomp) {
    const auto n = decomp.values.size();
    if (n < 1 || decomp.vectors.rows() != n || decomp.vectors.cols() != n)
        throw std::invalid_argument("assemble_matrix: inconsistent decomposition");
    Eigen::MatrixXd A =
        decomp.vectors * decomp.values.asDiagonal() * decomp.vectors.transpose();
    return SymmetricMatrix(0.5 * (A + A.transpose().eval()));
}

int true_count_in_interval(const EigenDecomposition& decomp,
                           const SearchInterval& interval) {
    int count = 0;
    for (Eigen::Index i = 0; i < decomp.values.size(); ++i)
        if (interval.contains(decomp.values[i])) ++count;
    return count;
}

}  // namespace feastlab
