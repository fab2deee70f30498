#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gaplab {

using Point = std::array<double, 2>;

enum class DomainKind { interval, rectangle, disk };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);

/**
 * Continuous convex domain plus its sampling resolution.
 *
 * interval:  [lower[0], upper[0]], resolution[0] nodes including both ends.
 * rectangle: [lower[0], upper[0]] x [lower[1], upper[1]], resolution = nodes per axis.
 * disk:      centered at the origin with the given radius,
 *            resolution = (radial rings, angular nodes per ring); one extra center node.
 */
struct DomainSpec {
    DomainKind kind = DomainKind::interval;
    Point lower{0.0, 0.0};
    Point upper{1.0, 1.0};
    double radius = 1.0;
    std::array<int, 2> resolution{8, 8};

    static DomainSpec interval(double a, double b, int nodes);
    static DomainSpec rectangle(Point lo, Point hi, int nx, int ny);
    static DomainSpec disk(double radius, int rings, int angular);
};

enum class NodeClass : std::uint8_t { interior, boundary };

inline constexpr int kMinResolution = 8;

/// Immutable lattice over a DomainSpec. Build with build_grid().
class DomainGrid {
public:
    const DomainSpec& spec() const noexcept { return spec_; }
    DomainKind kind() const noexcept { return spec_.kind; }
    int dimension() const noexcept { return spec_.kind == DomainKind::interval ? 1 : 2; }

    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Point> points() const noexcept { return points_; }
    const Point& point(std::size_t node) const { return points_[node]; }

    NodeClass node_class(std::size_t node) const { return classes_[node]; }
    bool is_boundary(std::size_t node) const { return classes_[node] == NodeClass::boundary; }
    /// Outward unit normal; zero vector for interior nodes.
    const Point& normal(std::size_t node) const { return normals_[node]; }
    /// Rectangle corner (boundary node on two faces).
    bool is_corner(std::size_t node) const;

    /// Uniform spacing per axis; for the disk (dr, dtheta).
    const Point& spacing() const noexcept { return spacing_; }
    /// Largest physical spacing, used for h-scaled tolerances.
    double h_max() const noexcept;

    /// Lattice coordinates. Interval/rectangle: (i, j). Disk: (ring, angle), center = (0, 0).
    std::array<int, 2> lattice(std::size_t node) const;
    /// Flat index of lattice coordinates; for the disk ring 0 maps to the center for any angle.
    std::size_t flat(int i, int j) const;
    /// Number of lattice positions per axis (disk: rings including center, angular nodes).
    std::array<int, 2> extent() const noexcept;

    std::vector<std::size_t> boundary_nodes() const;
    /// Distance from the node to the continuous boundary.
    double boundary_distance(std::size_t node) const;
    /// Polar radius and angle (any grid kind).
    double radius_of(std::size_t node) const;
    double angle_of(std::size_t node) const;

private:
    friend DomainGrid build_grid(const DomainSpec&, int);
    DomainGrid() = default;

    DomainSpec spec_;
    std::vector<Point> points_;
    std::vector<NodeClass> classes_;
    std::vector<Point> normals_;
    Point spacing_{0.0, 0.0};
};

/// Throws ConfigError on degenerate extents or resolution below min_resolution.
DomainGrid build_grid(const DomainSpec& spec, int min_resolution = kMinResolution);

struct DomainMetrics {
    double diameter = 0.0;
    /// Lower bound of the principal curvatures of the boundary.
    double min_curvature = 0.0;
    /// Mean curvature per node; NaN off the boundary and at rectangle corners.
    std::vector<double> mean_curvature;
};

DomainMetrics metrics(const DomainGrid& grid);

/// Analytic diameter of the continuous shape.
double diameter(const DomainSpec& spec);

/// Smallest and largest distance from the origin to points of the closed domain.
std::array<double, 2> radial_range(const DomainSpec& spec);

}  // namespace gaplab
