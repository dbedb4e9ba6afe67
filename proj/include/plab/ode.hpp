#pragma once

#include <string>
#include <vector>

namespace plab {

// Weight recoverable after committing to one cycle edge with t time units
// left: 1 - exp(-theta t / 2).
double beta(double t, double theta);

// First time where the keep-rolling value overtakes the stop value:
// (2/theta) ln((theta + sqrt(4 lambda^2 + theta^2)) / (2 lambda)).
// Callers must check the result is below 1 where validity requires it.
double s_star(double lambda, double theta);

// Piecewise value function: exponential ramp up to the crossing, then linear
// growth at slope lambda.
double alpha_closed(double t, double lambda, double theta);

// Optimal single-choice value lambda + 1/(2 lambda) of the rolling-particle
// warm-up.
double single_choice_value(double lambda);

struct AlphaSolution {
    std::vector<double> grid;          // 0 = t_0 < ... < t_n = 1
    std::vector<double> alpha_values;  // alpha at the grid points
    double s_star = 1.0;               // first grid crossing of alpha >= 1 + beta
    double lambda = 0;
    double theta = 0;
};

// Fixed-step RK4 integration of alpha'(t) = lambda + theta (max(alpha(t),
// 2 - exp(-theta t / 2)) - alpha(t)), alpha(0) = 0, over [0,1]. The requested
// step is rounded to divide the interval evenly; step must be in (0, 1e-2].
AlphaSolution alpha_numeric(double lambda, double theta, double step);

// CSV rows t, alpha, one_plus_beta for external plotting.
std::string alpha_to_csv(const AlphaSolution& solution);

}  // namespace plab
