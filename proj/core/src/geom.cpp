#include "faqem/geom.hpp"

namespace faqem {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = dot(ab, ap);
    double d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    Vec3 bp = p - b;
    double d3 = dot(ab, bp);
    double d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double denom = d1 - d3;
        double t = denom != 0.0 ? d1 / denom : 0.0;
        return a + ab * t;
    }

    Vec3 cp = p - c;
    double d5 = dot(ab, cp);
    double d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double denom = d2 - d6;
        double t = denom != 0.0 ? d2 / denom : 0.0;
        return a + ac * t;
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double denom = (d4 - d3) + (d5 - d6);
        double t = denom != 0.0 ? (d4 - d3) / denom : 0.0;
        return b + (c - b) * t;
    }

    double denom = va + vb + vc;
    if (denom == 0.0) return a;  // degenerate triangle
    double v = vb / denom;
    double w = vc / denom;
    return a + ab * v + ac * w;
}

void barycentric_coordinates(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c,
                             double& u, double& v, double& w) {
    Vec3 v0 = b - a, v1 = c - a, v2 = p - a;
    double d00 = dot(v0, v0);
    double d01 = dot(v0, v1);
    double d11 = dot(v1, v1);
    double d20 = dot(v2, v0);
    double d21 = dot(v2, v1);
    double denom = d00 * d11 - d01 * d01;
    if (denom == 0.0) {
        u = 1.0; v = 0.0; w = 0.0;
        return;
    }
    v = (d11 * d20 - d01 * d21) / denom;
    w = (d00 * d21 - d01 * d20) / denom;
    u = 1.0 - v - w;
}

}  // namespace faqem
