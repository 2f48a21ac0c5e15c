#include "ehd2d/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ehd2d {

double distance_sq(const PlanarPoint& a, const PlanarPoint& b) {
    const double dx = a.x_m - b.x_m;
    const double dy = a.y_m - b.y_m;
    return dx * dx + dy * dy;
}

double distance(const PlanarPoint& a, const PlanarPoint& b) {
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

double norm(const PlanarPoint& p) { return std::hypot(p.x_m, p.y_m); }

PlanarPoint sample_uniform_disk(double radius_m, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius_m * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::vector<PlanarPoint> sample_ppp_disk(double intensity, double radius_m, Rng& rng) {
    if (!(intensity > 0.0)) return {};
    const double mean = intensity * std::numbers::pi * radius_m * radius_m;
    std::poisson_distribution<long> count_dist(mean);
    const long n = count_dist(rng);
    std::vector<PlanarPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) points.push_back(sample_uniform_disk(radius_m, rng));
    return points;
}

PlanarPoint place_receiver(const PlanarPoint& tx, double pair_distance_m, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double theta = angle(rng);
    return {tx.x_m + pair_distance_m * std::cos(theta), tx.y_m + pair_distance_m * std::sin(theta)};
}

double disk_pair_distance_pdf(double r_m, double radius_m) {
    if (r_m < 0.0) throw std::domain_error("disk_pair_distance_pdf: negative distance");
    if (r_m >= 2.0 * radius_m) return 0.0;
    const double R = radius_m;
    const double q = r_m / (2.0 * R);
    const double bracket = (2.0 / std::numbers::pi) * std::acos(q) -
                           (r_m / (std::numbers::pi * R)) * std::sqrt(1.0 - q * q);
    return (2.0 * r_m / (R * R)) * bracket;
}

}  // namespace ehd2d
