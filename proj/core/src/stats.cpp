#include "rusim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace rusim {

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line: need two samples with matching lengths");
    }
    double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mean_x;
        double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_line: degenerate x values");
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double chi_square_uniform(std::span<const std::int64_t> counts) {
    if (counts.size() < 2) {
        throw std::invalid_argument("chi_square_uniform: need at least two bins");
    }
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    if (total == 0) {
        throw std::invalid_argument("chi_square_uniform: empty sample");
    }
    double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double chi2 = 0.0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2;
}

double chi_square_three_sigma_bound(int dof) {
    if (dof < 1) {
        throw std::invalid_argument("chi_square_three_sigma_bound: dof must be positive");
    }
    return dof + 3.0 * std::sqrt(2.0 * dof);
}

double binomial_sigma(double p, std::int64_t n) {
    if (p < 0.0 || p > 1.0 || n <= 0) {
        throw std::invalid_argument("binomial_sigma: invalid parameters");
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double geometric_mean(double p) {
    if (p <= 0.0 || p > 1.0) {
        throw std::invalid_argument("geometric_mean: p must be in (0, 1]");
    }
    return 1.0 / p;
}

double geometric_sigma(double p) {
    if (p <= 0.0 || p > 1.0) {
        throw std::invalid_argument("geometric_sigma: p must be in (0, 1]");
    }
    return std::sqrt(1.0 - p) / p;
}

}  // namespace rusim
