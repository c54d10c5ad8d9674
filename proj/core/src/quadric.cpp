#include "faqem/quadric.hpp"

#include <array>
#include <cmath>

namespace faqem {

Plane plane_from_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 n = normalized(cross(b - a, c - a));
    return Plane{n, -dot(n, a)};
}

Quadric plane_quadric(const Plane& p) {
    Quadric q;
    q.a00 = p.n.x * p.n.x;
    q.a01 = p.n.x * p.n.y;
    q.a02 = p.n.x * p.n.z;
    q.a03 = p.n.x * p.d;
    q.a11 = p.n.y * p.n.y;
    q.a12 = p.n.y * p.n.z;
    q.a13 = p.n.y * p.d;
    q.a22 = p.n.z * p.n.z;
    q.a23 = p.n.z * p.d;
    q.a33 = p.d * p.d;
    return q;
}

namespace {

// Solves A x = rhs for the symmetric 3x3 block of a quadric. Returns false
// when A is singular or too ill conditioned to trust (determinant proxy for
// the smallest singular value).
bool solve_3x3(const Quadric& q, const Vec3& rhs, Vec3& x) {
    const double m00 = q.a00, m01 = q.a01, m02 = q.a02;
    const double m11 = q.a11, m12 = q.a12, m22 = q.a22;

    double scale = std::max({std::fabs(m00), std::fabs(m01), std::fabs(m02), std::fabs(m11),
                             std::fabs(m12), std::fabs(m22)});
    if (scale <= 0.0) return false;

    double c00 = m11 * m22 - m12 * m12;
    double c01 = m02 * m12 - m01 * m22;
    double c02 = m01 * m12 - m02 * m11;
    double det = m00 * c00 + m01 * c01 + m02 * c02;
    if (std::fabs(det) < 1e-10 * scale * scale * scale) return false;

    double c11 = m00 * m22 - m02 * m02;
    double c12 = m01 * m02 - m00 * m12;
    double c22 = m00 * m11 - m01 * m01;

    x.x = (c00 * rhs.x + c01 * rhs.y + c02 * rhs.z) / det;
    x.y = (c01 * rhs.x + c11 * rhs.y + c12 * rhs.z) / det;
    x.z = (c02 * rhs.x + c12 * rhs.y + c22 * rhs.z) / det;
    return true;
}

Vec3 apply_3x3(const Quadric& q, const Vec3& v) {
    return {q.a00 * v.x + q.a01 * v.y + q.a02 * v.z,
            q.a01 * v.x + q.a11 * v.y + q.a12 * v.z,
            q.a02 * v.x + q.a12 * v.y + q.a22 * v.z};
}

}  // namespace

OptimalPlacement optimal_position(const Quadric& q, const Vec3& vi, const Vec3& vj) {
    const Vec3 b{q.a03, q.a13, q.a23};
    const Vec3 mid = (vi + vj) * 0.5;

    // Midpoint first: on cost ties (flat regions) it keeps collapse
    // placements centered, which the history-reversal stage depends on.
    const std::array<Vec3, 3> candidates = {mid, vi, vj};
    const std::array<PlacementSource, 3> sources = {
        PlacementSource::FallbackMid, PlacementSource::FallbackI, PlacementSource::FallbackJ};

    int best = 0;
    double best_cost = q.eval(candidates[0]);
    for (int k = 1; k < 3; ++k) {
        double c = q.eval(candidates[k]);
        if (c < best_cost) {
            best = k;
            best_cost = c;
        }
    }

    Vec3 x;
    if (solve_3x3(q, -b, x)) {
        Vec3 residual = apply_3x3(q, x) + b;
        if (norm(residual) <= 1e-6 * (1.0 + norm(b))) {
            double solved_cost = q.eval(x);
            // A PSD quadric cannot do better at a non-stationary point; the
            // comparison guards against indefinite inputs.
            if (solved_cost <= best_cost + 1e-12 * (1.0 + std::fabs(best_cost))) {
                return {x, std::max(0.0, solved_cost), PlacementSource::Solved};
            }
        }
    }
    return {candidates[best], std::max(0.0, best_cost), sources[best]};
}

}  // namespace faqem
