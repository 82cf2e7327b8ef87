// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ballfield/special.hpp"

namespace ballfield {

Ball::Ball(Eigen::VectorXd c, double r) : center(std::move(c)), radius(r)
{
    if (center.size() < 1)
        throw std::invalid_argument("Ball: dimension must be >= 1");
    if (!(radius > 0.0))
        throw std::invalid_argument("Ball: radius must be strictly positive");
}

Ball::Ball(std::initializer_list<double> c, double r)
    : Ball(Eigen::Map<const Eigen::VectorXd>(c.begin(), static_cast<long>(c.size())), r)
{
}

EuclideanMotion EuclideanMotion::identity(int d)
{
    return {Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d)};
}

EuclideanMotion EuclideanMotion::translate(Eigen::VectorXd t)
{
    const int d = static_cast<int>(t.size());
    return {Eigen::MatrixXd::Identity(d, d), std::move(t)};
}

EuclideanMotion EuclideanMotion::rotate(Eigen::MatrixXd r)
{
    const int d = static_cast<int>(r.rows());
    if (r.cols() != d)
        throw std::invalid_argument("EuclideanMotion: rotation must be square");
    EuclideanMotion g{std::move(r), Eigen::VectorXd::Zero(d)};
    if (!g.is_orthogonal())
        throw std::invalid_argument("EuclideanMotion: matrix is not orthogonal");
    return g;
}

Eigen::VectorXd EuclideanMotion::apply(const Eigen::VectorXd& x) const
{
    if (x.size() != translation.size())
        throw std::invalid_argument("EuclideanMotion: dimension mismatch");
    return rotation * x + translation;
}

EuclideanMotion EuclideanMotion::compose(const EuclideanMotion& other) const
{
    if (dim() != other.dim())
        throw std::invalid_argument("EuclideanMotion: dimension mismatch");
    return {rotation * other.rotation, rotation * other.translation + translation};
}

EuclideanMotion EuclideanMotion::inverse() const
{
    Eigen::MatrixXd rt = rotation.transpose();
    return {rt, -(rt * translation)};
}

bool EuclideanMotion::is_orthogonal(double tol) const
{
    const int d = dim();
    return (rotation.transpose() * rotation - Eigen::MatrixXd::Identity(d, d))
               .cwiseAbs()
               .maxCoeff() <= tol;
}

EuclideanMotion time_reflection(int d)
{
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(d, d);
    r(0, 0) = -1.0;
    return {std::move(r), Eigen::VectorXd::Zero(d)};
}

// ---------------------------------------------------------------------------

int region_dim(const Region& v)
{
    return std::visit(
        [](const auto& r) -> int {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HalfSpace>)
                return r.dim;
            else if constexpr (std::is_same_v<T, AxisBox>)
                return static_cast<int>(r.lo.size());
            else if constexpr (std::is_same_v<T, BallRegion>)
                return r.ball.dim();
            else if constexpr (std::is_same_v<T, AllSpace>)
                return r.dim;
            else
                return r.dim;
        },
        v);
}

bool region_contains_ball(const Region& v, const Ball& b)
{
    if (region_dim(v) != b.dim())
        throw std::invalid_argument("region_contains_ball: dimension mismatch");
    return std::visit(
        [&](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HalfSpace>)
            {
                return r.above ? b.time() - b.radius >= r.level
                               : b.time() + b.radius <= r.level;
            }
            else if constexpr (std::is_same_v<T, AxisBox>)
            {
                for (int i = 0; i < b.dim(); ++i)
                    if (b.center[i] - b.radius < r.lo[i] || b.center[i] + b.radius > r.hi[i])
                        return false;
                return true;
            }
            else if constexpr (std::is_same_v<T, BallRegion>)
            {
                return (b.center - r.ball.center).norm() + b.radius <= r.ball.radius;
            }
            else if constexpr (std::is_same_v<T, AllSpace>)
            {
                return true;
            }
            else  // TimeZeroSlab: no full-dimensional ball fits in a hyperplane
            {
                return false;
            }
        },
        v);
}

bool region_contains_center(const Region& v, const Ball& b)
{
    if (region_dim(v) != b.dim())
        throw std::invalid_argument("region_contains_center: dimension mismatch");
    return std::visit(
        [&](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, HalfSpace>)
            {
                return r.above ? b.time() > r.level : b.time() < r.level;
            }
            else if constexpr (std::is_same_v<T, AxisBox>)
            {
                for (int i = 0; i < b.dim(); ++i)
                    if (!(b.center[i] > r.lo[i] && b.center[i] < r.hi[i]))
                        return false;
                return true;
            }
            else if constexpr (std::is_same_v<T, BallRegion>)
            {
                return (b.center - r.ball.center).norm() < r.ball.radius;
            }
            else if constexpr (std::is_same_v<T, AllSpace>)
            {
                return true;
            }
            else
            {
                if (b.time() != 0.0)
                    return false;
                if (!r.spatial)
                    return true;
                for (int i = 1; i < b.dim(); ++i)
                    if (!(b.center[i] > r.spatial->lo[i - 1] && b.center[i] < r.spatial->hi[i - 1]))
                        return false;
                return true;
            }
        },
        v);
}

bool region_subset(const Region& inner, const Region& outer)
{
    if (region_dim(inner) != region_dim(outer))
        throw std::invalid_argument("region_subset: dimension mismatch");
    if (std::holds_alternative<AllSpace>(outer))
        return true;
    if (std::holds_alternative<AllSpace>(inner))
        return false;

    if (const auto* hi = std::get_if<HalfSpace>(&inner))
    {
        if (const auto* ho = std::get_if<HalfSpace>(&outer))
        {
            if (hi->above == ho->above)
                return hi->above ? hi->level >= ho->level : hi->level <= ho->level;
            return false;  // opposite half-spaces never nest
        }
        return false;  // a half-space cannot fit in a bounded region
    }
    if (const auto* bi = std::get_if<AxisBox>(&inner))
    {
        if (const auto* bo = std::get_if<AxisBox>(&outer))
        {
            return (bo->lo.array() <= bi->lo.array()).all() &&
                   (bi->hi.array() <= bo->hi.array()).all();
        }
        if (const auto* ho = std::get_if<HalfSpace>(&outer))
            return ho->above ? bi->lo[0] >= ho->level : bi->hi[0] <= ho->level;
        if (const auto* so = std::get_if<BallRegion>(&outer))
        {
            // farthest box corner from the ball center decides
            double sq = 0.0;
            for (int i = 0; i < bi->lo.size(); ++i)
            {
                const double a = std::abs(bi->lo[i] - so->ball.center[i]);
                const double b = std::abs(bi->hi[i] - so->ball.center[i]);
                const double m = std::max(a, b);
                sq += m * m;
            }
            return std::sqrt(sq) <= so->ball.radius;
        }
        throw UnsupportedRegionQuery("region_subset: box vs unsupported outer region");
    }
    if (const auto* si = std::get_if<BallRegion>(&inner))
    {
        if (const auto* so = std::get_if<BallRegion>(&outer))
            return (si->ball.center - so->ball.center).norm() + si->ball.radius <=
                   so->ball.radius;
        if (const auto* ho = std::get_if<HalfSpace>(&outer))
        {
            return ho->above ? si->ball.time() - si->ball.radius >= ho->level
                             : si->ball.time() + si->ball.radius <= ho->level;
        }
        throw UnsupportedRegionQuery("region_subset: ball vs unsupported outer region");
    }
    throw UnsupportedRegionQuery("region_subset: unsupported region pair");
}

std::optional<Region> transform_region(const EuclideanMotion& g, const Region& v)
{
    const int d = region_dim(v);
    if (g.dim() != d)
        throw std::invalid_argument("transform_region: dimension mismatch");
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
    const bool pure_translation = (g.rotation - eye).cwiseAbs().maxCoeff() <= 1e-14;

    if (const auto* s = std::get_if<BallRegion>(&v))
        return Region{BallRegion{apply_motion(g, s->ball)}};
    if (const auto* h = std::get_if<HalfSpace>(&v))
    {
        // supported when the motion maps the time axis to itself (up to sign)
        Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d);
        e0[0] = 1.0;
        const Eigen::VectorXd img = g.rotation * e0;
        const bool keeps = (img - e0).cwiseAbs().maxCoeff() <= 1e-14;
        const bool flips = (img + e0).cwiseAbs().maxCoeff() <= 1e-14;
        if (!keeps && !flips)
            return std::nullopt;
        // also require the spatial block not to mix into time
        if (g.rotation.row(0).tail(d - 1).cwiseAbs().maxCoeff() > 1e-14)
            return std::nullopt;
        if (keeps)
            return Region{HalfSpace{h->level + g.translation[0], h->above, d}};
        return Region{HalfSpace{-h->level + g.translation[0], !h->above, d}};
    }
    if (const auto* b = std::get_if<AxisBox>(&v))
    {
        if (!pure_translation)
            return std::nullopt;
        return Region{AxisBox{b->lo + g.translation, b->hi + g.translation}};
    }
    if (std::holds_alternative<AllSpace>(v))
        return v;
    if (const auto* z = std::get_if<TimeZeroSlab>(&v))
    {
        if (!pure_translation || g.translation[0] != 0.0)
            return std::nullopt;
        if (!z->spatial)
            return v;
        const Eigen::VectorXd shift = g.translation.tail(d - 1);
        return Region{TimeZeroSlab{d, AxisBox{z->spatial->lo + shift, z->spatial->hi + shift}}};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

double ball_volume(int d, double r)
{
    if (d < 1)
        throw std::invalid_argument("ball_volume: dimension must be >= 1");
    if (!(r > 0.0))
        throw std::invalid_argument("ball_volume: radius must be positive");
    return std::pow(std::numbers::pi, 0.5 * d) * std::pow(r, d) / std::tgamma(0.5 * d + 1.0);
}

double cap_volume(int d, double r, double h)
{
    if (d < 1 || !(r > 0.0))
        throw std::invalid_argument("cap_volume: bad dimension or radius");
    if (h <= 0.0)
        return 0.0;
    if (h >= 2.0 * r)
        return ball_volume(d, r);
    // x = (2rh - h^2)/r^2 is shared by the cap of height h and its complement.
    const double x = std::clamp(h * (2.0 * r - h) / (r * r), 0.0, 1.0);
    const double half = 0.5 * ball_volume(d, r) * regularized_beta(0.5 * (d + 1), 0.5, x);
    return h <= r ? half : ball_volume(d, r) - half;
}

double intersection_volume(const Ball& b1, const Ball& b2)
{
    if (b1.dim() != b2.dim())
        throw std::invalid_argument("intersection_volume: dimension mismatch");
    const double delta = (b1.center - b2.center).norm();
    const double r = b1.radius;
    const double s = b2.radius;
    if (delta >= r + s)
        return 0.0;  // disjoint or tangent (measure-zero overlap)
    if (delta <= std::abs(r - s))
        return ball_volume(b1.dim(), std::min(r, s));  // one ball inside the other
    const double c1 = (delta * delta + r * r - s * s) / (2.0 * delta);
    const double c2 = delta - c1;
    const double lens = cap_volume(b1.dim(), r, r - c1) + cap_volume(b1.dim(), s, s - c2);
    return std::max(lens, 0.0);
}

Ball apply_motion(const EuclideanMotion& g, const Ball& b)
{
    if (g.dim() != b.dim())
        throw std::invalid_argument("apply_motion: dimension mismatch");
    return Ball{g.apply(b.center), b.radius};
}

std::vector<Ball> select_balls(const Region& v, std::span<const Ball> pool)
{
    std::vector<Ball> out;
    for (const Ball& b : pool)
        if (region_contains_ball(v, b))
            out.push_back(b);
    return out;
}

}  // namespace ballfield
