#include "ehd2d/numerics.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ehd2d {

ChebyshevGrid chebyshev_grid(int order, double radius_m) {
    if (order < 1) throw std::domain_error("chebyshev_grid: order must be >= 1");
    if (!(radius_m > 0.0)) throw std::domain_error("chebyshev_grid: radius must be > 0");
    ChebyshevGrid grid;
    grid.order = order;
    grid.radius_m = radius_m;
    grid.nodes_x.reserve(order);
    grid.nodes_a.reserve(order);
    grid.nodes_b.reserve(order);
    for (int k = 1; k <= order; ++k) {
        const double x = std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * order));
        grid.nodes_x.push_back(x);
        grid.nodes_a.push_back(0.5 * radius_m * x + 0.5 * radius_m);
        grid.nodes_b.push_back(radius_m * x + radius_m);
    }
    return grid;
}

double chebyshev_integrate_radius(const ChebyshevGrid& grid, const std::function<double(double)>& f) {
    double sum = 0.0;
    for (int k = 0; k < grid.order; ++k) {
        const double x = grid.nodes_x[k];
        sum += std::sqrt(1.0 - x * x) * f(grid.nodes_a[k]);
    }
    return std::numbers::pi * 0.5 * grid.radius_m / grid.order * sum;
}

double chebyshev_integrate_diameter(const ChebyshevGrid& grid,
                                    const std::function<double(double)>& f) {
    double sum = 0.0;
    for (int k = 0; k < grid.order; ++k) {
        const double x = grid.nodes_x[k];
        sum += std::sqrt(1.0 - x * x) * f(grid.nodes_b[k]);
    }
    return std::numbers::pi * grid.radius_m / grid.order * sum;
}

namespace {

double mapped_integral(const std::function<double(double)>& f, double tol, double* error) {
    // One integrator per thread: the abscissa tables are costly to build.
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    auto mapped = [&f](double u, double uc) {
        // uc is the signed distance to the nearest endpoint; near u = 1 it
        // holds 1 - u without cancellation.
        const double one_minus_u = uc > 0.0 ? uc : 1.0 - u;
        if (!(one_minus_u > 0.0)) return 0.0;
        const double x = u / one_minus_u;
        if (std::isinf(x)) return 0.0;
        const double value = f(x) / one_minus_u / one_minus_u;
        return std::isfinite(value) ? value : 0.0;
    };
    double L1 = 0.0;
    return integrator.integrate(mapped, 0.0, 1.0, tol, error, &L1);
}

}  // namespace

double integrate_semi_infinite(const std::function<double(double)>& f, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::domain_error("integrate_semi_infinite: rel_tol must be > 0");
    double err_coarse = 0.0;
    double err_fine = 0.0;
    const double coarse = mapped_integral(f, rel_tol, &err_coarse);
    const double fine = mapped_integral(f, 0.5 * rel_tol, &err_fine);
    const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
    if (!std::isfinite(fine) || std::abs(fine - coarse) > rel_tol * scale ||
        err_fine > rel_tol * scale) {
        std::ostringstream msg;
        msg << "integrate_semi_infinite: no convergence (estimate " << fine << ", error "
            << err_fine << ", coarse " << coarse << ")";
        throw NumericalError(msg.str(), fine);
    }
    return fine;
}

FixedPointResult solve_fixed_point(const std::function<double(double)>& g,
                                   const FixedPointOptions& options) {
    FixedPointResult out;
    double x = options.start;
    for (int it = 0; it < options.max_iter; ++it) {
        const double gx = g(x);
        const double residual = std::abs(x - gx);
        out.iterations = it + 1;
        if (residual <= options.tol) {
            out.value = x;
            out.residual = residual;
            return out;
        }
        x = (1.0 - options.damping) * x + options.damping * gx;
    }

    // g(0) >= 0 and g(1) <= 1, so h = g(x) - x changes sign on [0, 1].
    out.bisection_used = true;
    double lo = 0.0;
    double hi = 1.0;
    double best = x;
    double best_residual = std::abs(x - g(x));
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h = g(mid) - mid;
        ++out.iterations;
        if (std::abs(h) < best_residual) {
            best = mid;
            best_residual = std::abs(h);
        }
        if (best_residual <= options.tol || hi - lo < 1e-16) break;
        (h > 0.0 ? lo : hi) = mid;
    }
    out.value = best;
    out.residual = best_residual;
    if (best_residual > options.tol) {
        std::ostringstream msg;
        msg << "solve_fixed_point: residual " << best_residual << " above tolerance "
            << options.tol;
        throw ConvergenceError(msg.str(), best, best_residual);
    }
    return out;
}

}  // namespace ehd2d
