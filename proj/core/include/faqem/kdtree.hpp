// Minimal static kd-tree over fixed-dimension points. Built once from a
// point set, then queried for nearest neighbors and radius balls. The
// median split uses (coordinate, index) ordering so builds are
// deterministic for identical input.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace faqem {

template <int Dim>
class KdTree {
public:
    using Point = std::array<double, Dim>;

    KdTree() = default;
    explicit KdTree(std::vector<Point> points) : points_(std::move(points)) {
        order_.resize(points_.size());
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
        if (!order_.empty()) build(0, static_cast<int>(order_.size()), 0);
    }

    size_t size() const { return points_.size(); }
    const Point& point(int index) const { return points_[index]; }

    // Index of the nearest point and its squared distance. Requires a
    // non-empty tree.
    int nearest(const Point& query, double* sq_dist_out = nullptr) const {
        int best = -1;
        double best_sq = std::numeric_limits<double>::max();
        nearest_rec(query, 0, static_cast<int>(order_.size()), 0, best, best_sq);
        if (sq_dist_out) *sq_dist_out = best_sq;
        return best;
    }

    // All point indices within `radius` of the query (inclusive).
    std::vector<int> radius_search(const Point& query, double radius) const {
        std::vector<int> hits;
        radius_rec(query, radius * radius, 0, static_cast<int>(order_.size()), 0, hits);
        std::sort(hits.begin(), hits.end());
        return hits;
    }

    static double squared_distance(const Point& a, const Point& b) {
        double s = 0.0;
        for (int d = 0; d < Dim; ++d) {
            double diff = a[d] - b[d];
            s += diff * diff;
        }
        return s;
    }

private:
    // Recursive median build over order_[lo, hi).
    void build(int lo, int hi, int axis) {
        if (hi - lo <= 1) return;
        int mid = (lo + hi) / 2;
        std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                         [&](int a, int b) {
                             if (points_[a][axis] != points_[b][axis])
                                 return points_[a][axis] < points_[b][axis];
                             return a < b;
                         });
        int next = (axis + 1) % Dim;
        build(lo, mid, next);
        build(mid + 1, hi, next);
    }

    void nearest_rec(const Point& q, int lo, int hi, int axis, int& best, double& best_sq) const {
        if (lo >= hi) return;
        int mid = (lo + hi) / 2;
        int idx = order_[mid];
        double sq = squared_distance(q, points_[idx]);
        if (sq < best_sq || (sq == best_sq && (best < 0 || idx < best))) {
            best_sq = sq;
            best = idx;
        }
        double delta = q[axis] - points_[idx][axis];
        int next = (axis + 1) % Dim;
        if (delta <= 0.0) {
            nearest_rec(q, lo, mid, next, best, best_sq);
            if (delta * delta <= best_sq) nearest_rec(q, mid + 1, hi, next, best, best_sq);
        } else {
            nearest_rec(q, mid + 1, hi, next, best, best_sq);
            if (delta * delta <= best_sq) nearest_rec(q, lo, mid, next, best, best_sq);
        }
    }

    void radius_rec(const Point& q, double radius_sq, int lo, int hi, int axis,
                    std::vector<int>& hits) const {
        if (lo >= hi) return;
        int mid = (lo + hi) / 2;
        int idx = order_[mid];
        if (squared_distance(q, points_[idx]) <= radius_sq) hits.push_back(idx);
        double delta = q[axis] - points_[idx][axis];
        int next = (axis + 1) % Dim;
        if (delta * delta <= radius_sq) {
            radius_rec(q, radius_sq, lo, mid, next, hits);
            radius_rec(q, radius_sq, mid + 1, hi, next, hits);
        } else if (delta <= 0.0) {
            radius_rec(q, radius_sq, lo, mid, next, hits);
        } else {
            radius_rec(q, radius_sq, mid + 1, hi, next, hits);
        }
    }

    std::vector<Point> points_;
    std::vector<int> order_;
};

}  // namespace faqem
