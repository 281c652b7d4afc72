#ifndef ALPHA_GEOMETRY_HPP
#define ALPHA_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "alpha/vec2.hpp"

namespace alpha {

// Closed oriented node polyline with a per-contour scalar strength. Node
// indices are cyclic: the segment j runs from nodes[j] to nodes[(j+1)%N].
struct Contour {
    std::vector<Vec2> nodes;
    double strength = -1.0; // theta_k, the coefficient in the velocity integral
    int id = 0;

    int size() const { return static_cast<int>(nodes.size()); }
    const Vec2& node(int j) const { return nodes[wrap(j)]; }
    int wrap(int j) const {
        const int n = size();
        j %= n;
        return j < 0 ? j + n : j;
    }
};

// Throws std::invalid_argument unless N >= 4 and consecutive nodes are distinct.
void validate_contour(const Contour& c);

struct NodeRef {
    int contour = 0; // contour id
    int node = 0;
};

// Per-segment cubic interpolation data for
//   x_j(p) = x_j + p t_j + eta_j(p) n_j,   eta_j(p) = mu p + beta p^2 + gamma p^3
// with t_j = x_{j+1} - x_j, n_j = rot90(t_j), |n_j| = |t_j| = d_j.
// The coefficients satisfy eta(1) = mu + beta + gamma = 0 so the interpolant
// passes through both endpoints.
struct SegmentGeometry {
    Vec2 t;
    Vec2 n;
    double d = 0.0;
    double mu = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double kappa0 = 0.0; // curvature at the left node
    double kappa1 = 0.0; // curvature at the right node
};

// Signed curvature of the circle through three consecutive points. Positive
// for a left turn. Collinear points give 0; coincident points are a contract
// violation.
double local_curvature(const Vec2& x_prev, const Vec2& x, const Vec2& x_next);

// Curvature at every node of a closed contour (cyclic three-point stencil).
std::vector<double> contour_curvatures(const Contour& c);

SegmentGeometry segment_geometry(const Contour& c, int j);

// All segments of a contour; curvatures are computed once for the pass.
std::vector<SegmentGeometry> compute_segments(const Contour& c);

Vec2 eval_segment(const SegmentGeometry& seg, const Vec2& base, double p);

// Unit tangent/normal at a node from the same weighted stencil that defines
// the local curvature. The normal is rot90(tangent).
struct NodeFrame {
    Vec2 tangent;
    Vec2 normal;
};
NodeFrame node_frame(const Contour& c, int j);

struct AreaResult {
    double area = 0.0;   // magnitude
    int orientation = 0; // +1 counterclockwise, -1 clockwise
};

// Signed area of the cubic interpolant via (1/2) closed integral of x dy - y dx,
// 4-point Gauss-Legendre per segment (exact for the polynomial integrand).
AreaResult contour_area(const Contour& c);

struct DistanceResult {
    double distance = 0.0;
    Vec2 point_a;
    Vec2 point_b;
};

// Minimum distance between the two interpolated curves. Coarse grid of 8
// samples per segment with bound pruning, then golden-section refinement of
// the best cell to relative tolerance 1e-10.
DistanceResult min_distance(const Contour& a, const Contour& b);

// Distance from a point to an interpolated contour.
DistanceResult point_contour_distance(const Vec2& p, const Contour& c);

} // namespace alpha

#endif
