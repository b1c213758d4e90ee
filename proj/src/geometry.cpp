#include "gptcompat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gptcompat/lp.hpp"

namespace gptcompat {

namespace {

// Feasibility LP: is x a convex combination of the given points?
bool in_convex_hull(const Point& x, const std::vector<Point>& points) {
    if (points.empty()) return false;
    const int d = static_cast<int>(x.size());
    const int k = static_cast<int>(points.size());
    LinearProgram lp;
    lp.c = Eigen::VectorXd::Zero(k);
    lp.A = Eigen::MatrixXd::Zero(2 * d + 2, k);
    lp.b = Eigen::VectorXd::Zero(2 * d + 2);
    for (int j = 0; j < k; ++j) {
        lp.A.col(j).head(d) = points[j];
        lp.A.col(j).segment(d, d) = -points[j];
        lp.A(2 * d, j) = 1.0;
        lp.A(2 * d + 1, j) = -1.0;
    }
    lp.b.head(d) = x;
    lp.b.segment(d, d) = -x;
    lp.b(2 * d) = 1.0;
    lp.b(2 * d + 1) = -1.0;
    return solve_lp(lp).status == LpStatus::Optimal;
}

// All size-k index subsets of {0..n-1}, in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& visit) {
    if (k > n || k <= 0) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Polytope Polytope::build(const std::vector<Point>& points, double tol) {
    if (points.empty()) fail(Errc::EmptyInput, "polytope needs at least one point");
    const int dim = static_cast<int>(points.front().size());
    if (dim == 0) fail(Errc::EmptyInput, "points must have at least one coordinate");
    for (const auto& p : points)
        if (p.size() != dim)
            fail(Errc::DimensionMismatch, "points have mixed ambient dimensions");

    // Deduplicate, first occurrence wins.
    std::vector<Point> unique;
    for (const auto& p : points) {
        bool seen = false;
        for (const auto& q : unique)
            if ((p - q).norm() <= tol) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(p);
    }

    // Drop points inside the hull of the others.
    std::vector<Point> extreme;
    if (unique.size() == 1) {
        extreme = unique;
    } else {
        for (std::size_t i = 0; i < unique.size(); ++i) {
            std::vector<Point> others;
            for (std::size_t j = 0; j < unique.size(); ++j)
                if (j != i) others.push_back(unique[j]);
            if (!in_convex_hull(unique[i], others)) extreme.push_back(unique[i]);
        }
        if (extreme.empty())
            fail(Errc::DegeneratePolytope, "no extreme points survived pruning");
    }

    Polytope poly;
    poly.tol_ = tol;
    poly.ambient_dim_ = dim;
    poly.vertices_ = std::move(extreme);
    poly.origin_ = poly.vertices_.front();

    // Orthonormal chart basis by modified Gram-Schmidt over vertex differences,
    // with one reorthogonalization pass.
    std::vector<Eigen::VectorXd> cols;
    for (std::size_t i = 1; i < poly.vertices_.size(); ++i) {
        Eigen::VectorXd w = poly.vertices_[i] - poly.origin_;
        const double scale = std::max(1.0, w.norm());
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : cols) w -= q.dot(w) * q;
        if (w.norm() > tol * scale) cols.push_back(w.normalized());
    }
    poly.intrinsic_dim_ = static_cast<int>(cols.size());
    poly.basis_ = Eigen::MatrixXd(dim, poly.intrinsic_dim_);
    for (int j = 0; j < poly.intrinsic_dim_; ++j) poly.basis_.col(j) = cols[j];

    const int nv = poly.vertex_count();
    poly.vertex_chart_ = Eigen::MatrixXd(nv, poly.intrinsic_dim_);
    for (int i = 0; i < nv; ++i)
        poly.vertex_chart_.row(i) = poly.to_chart(poly.vertices_[i]).transpose();

    // Facet enumeration: every facet is the affine span of intrinsic_dim
    // affinely independent vertices, so scanning all such subsets and keeping
    // the supporting hyperplanes finds them all.
    const int d = poly.intrinsic_dim_;
    if (d >= 1) {
        double scale = 1.0;
        for (int i = 0; i < nv; ++i)
            scale = std::max(scale, poly.vertex_chart_.row(i).norm());
        const double face_tol = tol * scale;

        std::set<std::vector<int>> seen;
        for_each_combination(nv, d, [&](const std::vector<int>& sub) {
            Eigen::VectorXd normal(d);
            if (d == 1) {
                normal(0) = 1.0;
            } else {
                Eigen::MatrixXd diff(d - 1, d);
                for (int k = 1; k < d; ++k)
                    diff.row(k - 1) = poly.vertex_chart_.row(sub[k]) -
                                      poly.vertex_chart_.row(sub[0]);
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeFullV);
                const auto& sv = svd.singularValues();
                if (sv(d - 2) <= 1e-9 * std::max(1.0, sv(0))) return;  // not affinely independent
                normal = svd.matrixV().col(d - 1);
            }
            double offset = 0.0;
            for (int s : sub) offset += normal.dot(poly.vertex_chart_.row(s));
            offset /= static_cast<double>(d);

            Eigen::VectorXd vals = poly.vertex_chart_ * normal -
                                   Eigen::VectorXd::Constant(nv, offset);
            const double mn = vals.minCoeff();
            const double mx = vals.maxCoeff();
            if (mx <= face_tol && mn < -face_tol) {  // supporting from the other side
                normal = -normal;
                offset = -offset;
                vals = -vals;
            } else if (!(mn >= -face_tol && mx > face_tol)) {
                return;  // hyperplane cuts the polytope, or all vertices lie on it
            }
            Facet f;
            f.normal = normal;
            f.offset = offset;
            for (int i = 0; i < nv; ++i)
                if (std::abs(vals(i)) <= face_tol) f.vertex_indices.push_back(i);
            if (static_cast<int>(f.vertex_indices.size()) < d) return;
            if (seen.insert(f.vertex_indices).second) poly.facets_.push_back(std::move(f));
        });
    }
    return poly;
}

Eigen::VectorXd Polytope::to_chart(const Point& x) const {
    if (x.size() != ambient_dim_)
        fail(Errc::DimensionMismatch, "point has ambient dimension " +
                                          std::to_string(x.size()) + ", polytope has " +
                                          std::to_string(ambient_dim_));
    return basis_.transpose() * (x - origin_);
}

Point Polytope::from_chart(const Eigen::VectorXd& xi) const {
    if (xi.size() != intrinsic_dim_)
        fail(Errc::DimensionMismatch, "chart point has dimension " +
                                          std::to_string(xi.size()) + ", chart has " +
                                          std::to_string(intrinsic_dim_));
    return origin_ + basis_ * xi;
}

double Polytope::affine_residual(const Point& x) const {
    if (x.size() != ambient_dim_)
        fail(Errc::DimensionMismatch, "point has ambient dimension " +
                                          std::to_string(x.size()) + ", polytope has " +
                                          std::to_string(ambient_dim_));
    return (x - from_chart(to_chart(x))).norm();
}

bool Polytope::in_affine_hull(const Point& x, double tol) const {
    return affine_residual(x) <= tol;
}

bool Polytope::contains(const Point& x, double tol) const {
    if (affine_residual(x) > tol) return false;
    const Eigen::VectorXd xi = to_chart(x);
    for (const auto& f : facets_)
        if (f.normal.dot(xi) - f.offset < -tol) return false;
    return true;
}

Point Polytope::interior_point() const {
    Point sum = Point::Zero(ambient_dim_);
    for (const auto& v : vertices_) sum += v;
    return sum / static_cast<double>(vertices_.size());
}

bool Polytope::is_simplex() const {
    return vertex_count() == intrinsic_dim_ + 1;
}

std::pair<std::vector<int>, std::vector<int>> Polytope::facets_at_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        fail(Errc::ParameterOutOfRange, "vertex index " + std::to_string(v) +
                                            " out of range 0.." +
                                            std::to_string(vertex_count() - 1));
    if (intrinsic_dim_ == 0)
        fail(Errc::DegeneratePolytope, "a single point has no facets");
    std::pair<std::vector<int>, std::vector<int>> split;
    for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
        const auto& idx = facets_[fi].vertex_indices;
        if (std::binary_search(idx.begin(), idx.end(), v))
            split.first.push_back(static_cast<int>(fi));
        else
            split.second.push_back(static_cast<int>(fi));
    }
    return split;
}

Eigen::VectorXd Polytope::barycentric_coordinates(const Point& x) const {
    if (!is_simplex())
        fail(Errc::NotASimplex, "barycentric coordinates need a simplex, got " +
                                    std::to_string(vertex_count()) + " vertices in dimension " +
                                    std::to_string(intrinsic_dim_));
    if (!contains(x, tol_))
        fail(Errc::OutsidePolytope, "point is not in the simplex");
    const int d = intrinsic_dim_;
    Eigen::MatrixXd s(d + 1, d + 1);
    s.topRows(d) = vertex_chart_.transpose();
    s.bottomRows(1).setOnes();
    Eigen::VectorXd rhs(d + 1);
    rhs.head(d) = to_chart(x);
    rhs(d) = 1.0;
    return s.partialPivLu().solve(rhs);
}

}  // namespace gptcompat
