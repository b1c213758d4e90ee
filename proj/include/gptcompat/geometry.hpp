#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gptcompat/error.hpp"

namespace gptcompat {

using Point = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// One facet of a polytope, described in chart (intrinsic) coordinates:
// normal . xi >= offset holds on the whole polytope, with equality exactly on
// the facet.  The normal has unit length and points inward.
struct Facet {
    Eigen::VectorXd normal;
    double offset = 0.0;
    std::vector<int> vertex_indices;  // sorted indices into Polytope::vertices()
};

// Convex polytope given by vertices in an ambient space of any dimension.
// Construction removes duplicates and non-extreme points, fixes an affine
// chart for the hull, and enumerates facets in that chart.  Instances are
// immutable after construction.
class Polytope {
public:
    // Deduplicates the input (first occurrence wins, order otherwise kept),
    // drops points inside the hull of the others, builds the chart and the
    // facet list.  Throws EmptyInput / DimensionMismatch on malformed input.
    static Polytope build(const std::vector<Point>& points, double tol = kDefaultTol);

    int ambient_dim() const { return ambient_dim_; }
    int intrinsic_dim() const { return intrinsic_dim_; }
    double tol() const { return tol_; }

    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(int i) const { return vertices_.at(i); }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }

    // Facet list in chart coordinates; empty for a single point.
    const std::vector<Facet>& facets() const { return facets_; }

    // Chart: xi = basis^T (x - origin); origin is the first vertex and the
    // basis columns are orthonormal, so from_chart is a left inverse.
    const Point& chart_origin() const { return origin_; }
    const Eigen::MatrixXd& chart_basis() const { return basis_; }
    Eigen::VectorXd to_chart(const Point& x) const;
    Point from_chart(const Eigen::VectorXd& xi) const;
    // Row i holds vertex i in chart coordinates.
    const Eigen::MatrixXd& vertex_chart() const { return vertex_chart_; }

    // Distance from x to the affine hull of the polytope.
    double affine_residual(const Point& x) const;
    bool in_affine_hull(const Point& x, double tol) const;

    // Membership test: affine-hull residual plus every facet inequality,
    // each within tol.
    bool contains(const Point& x, double tol) const;
    bool contains(const Point& x) const { return contains(x, tol_); }

    // Average of the vertices; lies in the relative interior.
    Point interior_point() const;

    // True when the vertex count is intrinsic_dim + 1.
    bool is_simplex() const;

    // Indices of facets containing / not containing vertex v.  Throws
    // DegeneratePolytope for a single point (no facets to split).
    std::pair<std::vector<int>, std::vector<int>> facets_at_vertex(int v) const;

    // Barycentric coordinates of x in a simplex: the unique convex weights
    // with sum 1 reproducing x.  Throws NotASimplex / OutsidePolytope.
    Eigen::VectorXd barycentric_coordinates(const Point& x) const;

private:
    Polytope() = default;

    int ambient_dim_ = 0;
    int intrinsic_dim_ = 0;
    double tol_ = kDefaultTol;
    std::vector<Point> vertices_;
    Point origin_;
    Eigen::MatrixXd basis_;        // ambient_dim x intrinsic_dim, orthonormal columns
    Eigen::MatrixXd vertex_chart_; // vertex_count x intrinsic_dim
    std::vector<Facet> facets_;
};

}  // namespace gptcompat
