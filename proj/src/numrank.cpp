#include "tenrank/numrank.hpp"

#include "tenrank/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tenrank {

double default_tolerance(std::size_t rows, std::size_t cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() *
           sigma_max;
}

std::vector<double> singular_values(const Matrix& m) {
    if (m.size() == 0) throw NumericalError("singular values of an empty matrix", m.rows(), m.cols());
    const auto data = m.data();
    if (!std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); }))
        throw NumericalError("matrix contains non-finite entries", m.rows(), m.cols());

    const Eigen::Map<const Eigen::MatrixXd> view(data.data(), static_cast<Eigen::Index>(m.rows()),
                                                 static_cast<Eigen::Index>(m.cols()));
    Eigen::BDCSVD<Eigen::MatrixXd> svd(view);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge", m.rows(), m.cols());

    const auto& sv = svd.singularValues();
    std::vector<double> out(sv.data(), sv.data() + sv.size());
    if (!std::all_of(out.begin(), out.end(), [](double v) { return std::isfinite(v); }))
        throw NumericalError("SVD produced non-finite singular values", m.rows(), m.cols());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RankResult matrix_rank(const Matrix& m, std::optional<double> tol) {
    if (tol && !(*tol > 0.0 && std::isfinite(*tol)))
        throw ParameterError("rank tolerance must be a positive finite number");

    RankResult res;
    res.singular_values = singular_values(m);
    const double sigma_max = res.singular_values.front();
    // Keep the reported tolerance positive even for an all-zero matrix.
    res.tolerance_used = tol ? *tol
                             : std::max(default_tolerance(m.rows(), m.cols(), sigma_max),
                                        std::numeric_limits<double>::min());
    res.rank = static_cast<std::size_t>(
        std::count_if(res.singular_values.begin(), res.singular_values.end(),
                      [t = res.tolerance_used](double s) { return s > t; }));
    return res;
}

long long sylvester_bound(long long rank_a, long long rank_b, long long rank_c, long long m,
                          long long p) {
    return rank_a + rank_b + rank_c - m - p;
}

}  // namespace tenrank
