#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plab {

// Threshold validity limit of the secretary-matching closed form: 1 + 1/sqrt(2).
double secretary_matching_gamma();

// Degree-(3,3) polynomial giving the limit expected offline optimum of the
// prophet-matching construction.
double F_polynomial(double p, double q);

// Strict parameter constraints of the prophet-matching construction, with
// r = (1-p)q + (1-q)p eliminated.
bool prophet_matching_feasible(double p, double q);

struct MaximizeFResult {
    double p = 0;
    double q = 0;
    double f_value = 0;
};

// Deterministic maximization of F over the feasible region: coarse grid of
// step 1e-3 followed by local refinement to 1e-8.
MaximizeFResult maximize_F();

struct ThresholdPair {
    double s = 0;
    double t = 0;
};

// Closed-form expected value of the two-threshold policy on the
// prophet-secretary matching instance (limit in m).
double alg_secretary_matching(double s, double t, double lambda);
// Same for the prophet-secretary 2-bounded-auction instance.
double alg_secretary_2ba(double s, double t, double lambda);

// (1 - gamma/lambda, 1 - 1/lambda); requires lambda >= gamma.
ThresholdPair optimal_thresholds_secretary_matching(double lambda);

double bound_secretary_matching(double lambda);  // lambda >= gamma
double bound_secretary_2ba(double lambda);       // lambda >= 1
double bound_single_choice(double lambda);       // lambda >= 1

// Ratio of the limit online value to the limit offline optimum of the iid
// jackpot family; requires lambda, theta >= 1 and crossing time < 1.
double bound_iid(double lambda, double theta);
double bound_iid_numerator(double lambda, double theta);

namespace detail {
// Unchecked polynomial forms, defined on all of [0,1]^2; used for
// finite-difference stationarity checks at boundary thresholds.
double alg_secretary_matching_poly(double s, double t, double lambda);
double alg_secretary_2ba_poly(double s, double t, double lambda);
}  // namespace detail

struct MinimizeResult {
    std::vector<double> argmin;
    double value = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Deterministic derivative-free minimization: full grid scan (>= 200 points
// per axis) followed by shrinking-stencil local refinement to tolerance.
// Non-finite objective values lose against every finite value; an objective
// that is non-finite on more than half the grid is rejected. Exact grid ties
// resolve to the lexicographically first point (box lower corner for a
// constant objective).
MinimizeResult minimize_nd(const Objective& f,
                           std::span<const std::pair<double, double>> box, double tol);

// The refinement stage alone, from an explicit start point.
MinimizeResult refine_local(const Objective& f,
                            std::span<const std::pair<double, double>> box,
                            std::span<const double> start, double initial_step,
                            double tol);

// One row of the reproduction report.
struct BoundReport {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    double value = 0;
    double paper_value = 0;
    double abs_err = 0;
    std::string ref;
};

// Recomputes the six headline bounds from scratch.
std::vector<BoundReport> compute_headline_bounds();

}  // namespace plab
