// stats.hpp
// Small statistics helpers shared by the Monte Carlo experiments and their
// verdicts: analytic bands, a chi-square statistic, least-squares fits.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rusim {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Chi-square statistic of observed counts against the uniform distribution;
// degrees of freedom = counts.size() - 1.
double chi_square_uniform(std::span<const std::int64_t> counts);

// 3-sigma acceptance threshold for a chi-square statistic: dof + 3*sqrt(2*dof).
double chi_square_three_sigma_bound(int dof);

// Standard deviation of an empirical frequency of a Bernoulli(p) over n draws.
double binomial_sigma(double p, std::int64_t n);

// Mean and standard deviation of the geometric distribution on {1, 2, ...}.
double geometric_mean(double p);
double geometric_sigma(double p);

}  // namespace rusim
