// Symmetric 4x4 error quadrics and the collapse placement solver.
//
// A quadric Q measures the accumulated squared plane distance of a
// homogeneous point v = [x y z 1]: eval(v) = v^T Q v. Only the upper
// triangle (10 coefficients) is stored; addition and scaling are
// coefficient-wise.
#pragma once

#include "faqem/geom.hpp"

namespace faqem {

// Plane in implicit form n.x + d = 0. The normal is not required to be
// unit length; callers normalize when the quadric should measure metric
// distance.
struct Plane {
    Vec3 n;
    double d = 0.0;
};

// Plane through the triangle abc with unit normal, so eval measures
// squared Euclidean distance to the supporting plane.
Plane plane_from_triangle(const Vec3& a, const Vec3& b, const Vec3& c);

struct Quadric {
    // Upper triangle of the symmetric matrix, row major:
    //   [ a00 a01 a02 a03 ]
    //   [  .  a11 a12 a13 ]
    //   [  .   .  a22 a23 ]
    //   [  .   .   .  a33 ]
    double a00 = 0, a01 = 0, a02 = 0, a03 = 0;
    double a11 = 0, a12 = 0, a13 = 0;
    double a22 = 0, a23 = 0;
    double a33 = 0;

    Quadric& operator+=(const Quadric& o) {
        a00 += o.a00; a01 += o.a01; a02 += o.a02; a03 += o.a03;
        a11 += o.a11; a12 += o.a12; a13 += o.a13;
        a22 += o.a22; a23 += o.a23;
        a33 += o.a33;
        return *this;
    }
    Quadric operator+(const Quadric& o) const {
        Quadric q = *this;
        q += o;
        return q;
    }
    Quadric operator*(double s) const {
        Quadric q = *this;
        q.a00 *= s; q.a01 *= s; q.a02 *= s; q.a03 *= s;
        q.a11 *= s; q.a12 *= s; q.a13 *= s;
        q.a22 *= s; q.a23 *= s;
        q.a33 *= s;
        return q;
    }

    bool is_zero() const {
        return a00 == 0 && a01 == 0 && a02 == 0 && a03 == 0 && a11 == 0 && a12 == 0 &&
               a13 == 0 && a22 == 0 && a23 == 0 && a33 == 0;
    }

    // v^T Q v with v homogenized.
    double eval(const Vec3& v) const {
        return v.x * (a00 * v.x + 2 * (a01 * v.y + a02 * v.z + a03)) +
               v.y * (a11 * v.y + 2 * (a12 * v.z + a13)) +
               v.z * (a22 * v.z + 2 * a23) + a33;
    }
};

// Fundamental quadric p p^T for plane p = [n, d].
Quadric plane_quadric(const Plane& p);

enum class PlacementSource { Solved, FallbackI, FallbackJ, FallbackMid };

struct OptimalPlacement {
    Vec3 position;
    double cost = 0.0;
    PlacementSource source = PlacementSource::FallbackMid;
};

// Minimizes eval over positions. Solves the 3x3 stationarity system when
// it is well conditioned (|det| >= 1e-10 * scale^3) and the residual
// ||Ax + b|| <= 1e-6 * (1 + ||b||); otherwise picks the best of
// {vi, vj, midpoint} (ties resolved in that order). Negative round-off
// costs are clamped to zero.
OptimalPlacement optimal_position(const Quadric& q, const Vec3& vi, const Vec3& vj);

}  // namespace faqem
