#pragma once

#include <random>
#include <vector>

namespace ehd2d {

using Rng = std::mt19937_64;

struct PlanarPoint {
    double x_m = 0.0;
    double y_m = 0.0;
};

double distance(const PlanarPoint& a, const PlanarPoint& b);
double distance_sq(const PlanarPoint& a, const PlanarPoint& b);
double norm(const PlanarPoint& p);

/// Uniform point on the disk of the given radius centred at the origin.
PlanarPoint sample_uniform_disk(double radius_m, Rng& rng);

/// Homogeneous PPP on a centred disk: Poisson count, then i.i.d. uniform points.
std::vector<PlanarPoint> sample_ppp_disk(double intensity, double radius_m, Rng& rng);

/// Receiver at exactly pair_distance_m from tx in a uniformly random direction.
PlanarPoint place_receiver(const PlanarPoint& tx, double pair_distance_m, Rng& rng);

/// Density of the distance between two independent uniform points in a disk
/// of radius R. Zero outside [0, 2R]; negative r is a domain error.
double disk_pair_distance_pdf(double r_m, double radius_m);

}  // namespace ehd2d
