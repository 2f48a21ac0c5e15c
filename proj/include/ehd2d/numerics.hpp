#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehd2d {

/// Quadrature failure; carries whatever estimate was reached.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double partial_estimate)
        : std::runtime_error(what), partial_estimate_(partial_estimate) {}
    double partial_estimate() const noexcept { return partial_estimate_; }

private:
    double partial_estimate_;
};

/// Fixed-point solver ran out of iterations.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double estimate, double residual)
        : NumericalError(what, estimate), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Gauss-Chebyshev (first kind) nodes mapped onto [0, R] and [0, 2R].
struct ChebyshevGrid {
    int order = 0;
    double radius_m = 0.0;
    std::vector<double> nodes_x;  // cos((2k-1) pi / 2K)
    std::vector<double> nodes_a;  // (R/2) x_k + R/2
    std::vector<double> nodes_b;  // R x_k + R
};

ChebyshevGrid chebyshev_grid(int order, double radius_m);

/// Gauss-Chebyshev estimate of the integral of f over [0, R].
double chebyshev_integrate_radius(const ChebyshevGrid& grid, const std::function<double(double)>& f);

/// Gauss-Chebyshev estimate of the integral of f over [0, 2R].
double chebyshev_integrate_diameter(const ChebyshevGrid& grid,
                                    const std::function<double(double)>& f);

/// Integral of f over [0, inf). The half line is mapped to [0, 1) by
/// x = u / (1 - u) and integrated with double-exponential quadrature, which
/// never samples the endpoints and tolerates the (1 - u)^(-1/2)-type
/// endpoint behaviour produced by slowly decaying tails. The estimate is
/// accepted only when it agrees with a rerun at half the tolerance.
double integrate_semi_infinite(const std::function<double(double)>& f, double rel_tol = 1e-6);

struct FixedPointResult {
    double value = 0.0;
    double residual = 0.0;  // |x - g(x)|
    int iterations = 0;
    bool bisection_used = false;
};

struct FixedPointOptions {
    double tol = 1e-9;
    int max_iter = 20000;
    double damping = 0.5;
    double start = 0.5;
};

/// Fixed point of a nondecreasing self-map of [0, 1]: damped iteration
/// x <- (1 - w) x + w g(x), then bisection on g(x) - x if that stalls.
FixedPointResult solve_fixed_point(const std::function<double(double)>& g,
                                   const FixedPointOptions& options = {});

}  // namespace ehd2d
