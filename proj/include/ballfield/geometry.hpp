// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace ballfield {

/// Open ball in R^d, indexed by (center, radius). The first coordinate of
/// the center is the "time" axis used by reflections and half-spaces.
struct Ball
{
    Eigen::VectorXd center;
    double radius = 1.0;

    Ball() = default;
    Ball(Eigen::VectorXd c, double r);
    Ball(std::initializer_list<double> c, double r);

    int dim() const { return static_cast<int>(center.size()); }
    double time() const { return center[0]; }
};

/// Rigid motion x -> R x + t with orthogonal R.
struct EuclideanMotion
{
    Eigen::MatrixXd rotation;
    Eigen::VectorXd translation;

    static EuclideanMotion identity(int d);
    static EuclideanMotion translate(Eigen::VectorXd t);
    static EuclideanMotion rotate(Eigen::MatrixXd r);

    int dim() const { return static_cast<int>(translation.size()); }
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    EuclideanMotion compose(const EuclideanMotion& other) const;  // this after other
    EuclideanMotion inverse() const;
    bool is_orthogonal(double tol = 1e-12) const;
};

/// Time reflection (t, x1, ..., x_{d-1}) -> (-t, x1, ..., x_{d-1}).
EuclideanMotion time_reflection(int d);

// ---------------------------------------------------------------------------
// Regions of R^d with exact ball / center containment predicates.

struct HalfSpace
{
    double level = 0.0;  // boundary value of the time coordinate
    bool above = true;   // t > level when true, t < level otherwise
    int dim = 2;
};

struct AxisBox
{
    Eigen::VectorXd lo, hi;  // open box (lo, hi)
};

struct BallRegion
{
    Ball ball;
};

struct AllSpace
{
    int dim = 2;
};

/// The time-zero hyperplane {t = 0}, optionally restricted to an open box in
/// the remaining coordinates. Used for center-membership queries only: no
/// full-dimensional ball fits inside a hyperplane.
struct TimeZeroSlab
{
    int dim = 2;
    std::optional<AxisBox> spatial;  // box over coordinates 1..d-1
};

using Region = std::variant<HalfSpace, AxisBox, BallRegion, AllSpace, TimeZeroSlab>;

int region_dim(const Region& v);

/// b(x, r) subseteq V, with open-set semantics: the open ball lies in the open
/// half-space {t > c} exactly when x_t - r >= c.
bool region_contains_ball(const Region& v, const Ball& b);

/// x in V (center membership, the index set that constrains only centers).
bool region_contains_center(const Region& v, const Ball& b);

/// Certified subset test for the supported region pairs (nested half-spaces,
/// boxes, balls, box/ball inside half-space, anything inside AllSpace).
/// Throws UnsupportedRegionQuery for combinations outside that algebra.
bool region_subset(const Region& inner, const Region& outer);

/// Image of a region under a motion, when the image stays in the supported
/// catalogue (balls under any motion, boxes/half-spaces under translations
/// and time-axis-preserving rotations). Returns nullopt otherwise.
std::optional<Region> transform_region(const EuclideanMotion& g, const Region& v);

struct UnsupportedRegionQuery : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Volumes.

/// Volume of a d-dimensional ball: pi^{d/2} r^d / Gamma(d/2 + 1).
double ball_volume(int d, double r);

/// Volume of the spherical cap of height h (0 <= h <= 2r) of a d-ball,
/// via the regularized incomplete beta function.
double cap_volume(int d, double r, double h);

/// Exact volume of the intersection of two open balls (the lens), as the sum
/// of two hyperspherical caps. Tangency counts as zero overlap.
double intersection_volume(const Ball& b1, const Ball& b2);

/// Motion action on the index set: g . (x, r) = (g x, r).
Ball apply_motion(const EuclideanMotion& g, const Ball& b);

/// Select the balls of a pool lying inside V (ball containment).
std::vector<Ball> select_balls(const Region& v, std::span<const Ball> pool);

}  // namespace ballfield
