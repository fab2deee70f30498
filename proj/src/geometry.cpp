#include "gaplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaplab/error.hpp"

namespace gaplab {

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::interval: return "interval";
        case DomainKind::rectangle: return "rectangle";
        case DomainKind::disk: return "disk";
    }
    return "unknown";
}

DomainKind domain_kind_from_string(const std::string& name) {
    if (name == "interval") return DomainKind::interval;
    if (name == "rectangle") return DomainKind::rectangle;
    if (name == "disk") return DomainKind::disk;
    throw ConfigError("unknown domain kind '" + name + "'");
}

DomainSpec DomainSpec::interval(double a, double b, int nodes) {
    DomainSpec s;
    s.kind = DomainKind::interval;
    s.lower = {a, 0.0};
    s.upper = {b, 0.0};
    s.resolution = {nodes, 1};
    return s;
}

DomainSpec DomainSpec::rectangle(Point lo, Point hi, int nx, int ny) {
    DomainSpec s;
    s.kind = DomainKind::rectangle;
    s.lower = lo;
    s.upper = hi;
    s.resolution = {nx, ny};
    return s;
}

DomainSpec DomainSpec::disk(double radius, int rings, int angular) {
    DomainSpec s;
    s.kind = DomainKind::disk;
    s.radius = radius;
    s.resolution = {rings, angular};
    return s;
}

namespace {

void validate(const DomainSpec& spec, int min_resolution) {
    auto check_axis = [&](int axis) {
        if (!(spec.upper[axis] > spec.lower[axis]) || !std::isfinite(spec.upper[axis] - spec.lower[axis])) {
            throw ConfigError("degenerate extent on axis " + std::to_string(axis) + ": upper must exceed lower");
        }
        if (spec.resolution[axis] < min_resolution) {
            throw ConfigError("resolution " + std::to_string(spec.resolution[axis]) + " on axis " +
                              std::to_string(axis) + " is below the minimum " + std::to_string(min_resolution));
        }
    };
    switch (spec.kind) {
        case DomainKind::interval:
            check_axis(0);
            break;
        case DomainKind::rectangle:
            check_axis(0);
            check_axis(1);
            break;
        case DomainKind::disk:
            if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
                throw ConfigError("disk radius must be positive");
            }
            if (spec.resolution[0] < min_resolution || spec.resolution[1] < min_resolution) {
                throw ConfigError("disk resolution below the minimum " + std::to_string(min_resolution));
            }
            if (spec.resolution[1] % 2 != 0) {
                throw ConfigError("disk angular resolution must be even");
            }
            break;
    }
}

}  // namespace

DomainGrid build_grid(const DomainSpec& spec, int min_resolution) {
    validate(spec, min_resolution);
    DomainGrid g;
    g.spec_ = spec;

    switch (spec.kind) {
        case DomainKind::interval: {
            const int n = spec.resolution[0];
            const double h = (spec.upper[0] - spec.lower[0]) / (n - 1);
            g.spacing_ = {h, 0.0};
            g.points_.resize(n);
            g.classes_.assign(n, NodeClass::interior);
            g.normals_.assign(n, Point{0.0, 0.0});
            for (int i = 0; i < n; ++i) {
                // Endpoint pinned exactly so lattice sums do not drift.
                g.points_[i] = {i == n - 1 ? spec.upper[0] : spec.lower[0] + i * h, 0.0};
            }
            g.classes_.front() = g.classes_.back() = NodeClass::boundary;
            g.normals_.front() = {-1.0, 0.0};
            g.normals_.back() = {1.0, 0.0};
            break;
        }
        case DomainKind::rectangle: {
            const int nx = spec.resolution[0];
            const int ny = spec.resolution[1];
            const double hx = (spec.upper[0] - spec.lower[0]) / (nx - 1);
            const double hy = (spec.upper[1] - spec.lower[1]) / (ny - 1);
            g.spacing_ = {hx, hy};
            const std::size_t n = static_cast<std::size_t>(nx) * ny;
            g.points_.resize(n);
            g.classes_.assign(n, NodeClass::interior);
            g.normals_.assign(n, Point{0.0, 0.0});
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    const std::size_t k = static_cast<std::size_t>(j) * nx + i;
                    g.points_[k] = {i == nx - 1 ? spec.upper[0] : spec.lower[0] + i * hx,
                                    j == ny - 1 ? spec.upper[1] : spec.lower[1] + j * hy};
                    Point nrm{0.0, 0.0};
                    if (i == 0) nrm[0] -= 1.0;
                    if (i == nx - 1) nrm[0] += 1.0;
                    if (j == 0) nrm[1] -= 1.0;
                    if (j == ny - 1) nrm[1] += 1.0;
                    if (nrm[0] != 0.0 || nrm[1] != 0.0) {
                        const double len = std::hypot(nrm[0], nrm[1]);
                        g.normals_[k] = {nrm[0] / len, nrm[1] / len};
                        g.classes_[k] = NodeClass::boundary;
                    }
                }
            }
            break;
        }
        case DomainKind::disk: {
            const int nr = spec.resolution[0];
            const int nt = spec.resolution[1];
            const double dr = spec.radius / nr;
            const double dt = 2.0 * std::numbers::pi / nt;
            g.spacing_ = {dr, dt};
            const std::size_t n = static_cast<std::size_t>(nr) * nt + 1;
            g.points_.resize(n);
            g.classes_.assign(n, NodeClass::interior);
            g.normals_.assign(n, Point{0.0, 0.0});
            g.points_[0] = {0.0, 0.0};
            for (int i = 1; i <= nr; ++i) {
                const double r = (i == nr) ? spec.radius : i * dr;
                for (int j = 0; j < nt; ++j) {
                    const double t = j * dt;
                    const std::size_t k = 1 + static_cast<std::size_t>(i - 1) * nt + j;
                    g.points_[k] = {r * std::cos(t), r * std::sin(t)};
                    if (i == nr) {
                        g.classes_[k] = NodeClass::boundary;
                        g.normals_[k] = {std::cos(t), std::sin(t)};
                    }
                }
            }
            break;
        }
    }
    return g;
}

bool DomainGrid::is_corner(std::size_t node) const {
    if (spec_.kind != DomainKind::rectangle) return false;
    const auto [i, j] = lattice(node);
    const bool xe = (i == 0 || i == spec_.resolution[0] - 1);
    const bool ye = (j == 0 || j == spec_.resolution[1] - 1);
    return xe && ye;
}

double DomainGrid::h_max() const noexcept {
    switch (spec_.kind) {
        case DomainKind::interval: return spacing_[0];
        case DomainKind::rectangle: return std::max(spacing_[0], spacing_[1]);
        case DomainKind::disk: return std::max(spacing_[0], spec_.radius * spacing_[1]);
    }
    return spacing_[0];
}

std::array<int, 2> DomainGrid::extent() const noexcept {
    switch (spec_.kind) {
        case DomainKind::interval: return {spec_.resolution[0], 1};
        case DomainKind::rectangle: return spec_.resolution;
        case DomainKind::disk: return {spec_.resolution[0] + 1, spec_.resolution[1]};
    }
    return {0, 0};
}

std::array<int, 2> DomainGrid::lattice(std::size_t node) const {
    switch (spec_.kind) {
        case DomainKind::interval: return {static_cast<int>(node), 0};
        case DomainKind::rectangle: {
            const int nx = spec_.resolution[0];
            return {static_cast<int>(node % nx), static_cast<int>(node / nx)};
        }
        case DomainKind::disk: {
            if (node == 0) return {0, 0};
            const int nt = spec_.resolution[1];
            return {static_cast<int>((node - 1) / nt) + 1, static_cast<int>((node - 1) % nt)};
        }
    }
    return {0, 0};
}

std::size_t DomainGrid::flat(int i, int j) const {
    switch (spec_.kind) {
        case DomainKind::interval: return static_cast<std::size_t>(i);
        case DomainKind::rectangle: return static_cast<std::size_t>(j) * spec_.resolution[0] + i;
        case DomainKind::disk: {
            if (i == 0) return 0;
            const int nt = spec_.resolution[1];
            const int jj = ((j % nt) + nt) % nt;
            return 1 + static_cast<std::size_t>(i - 1) * nt + jj;
        }
    }
    return 0;
}

std::vector<std::size_t> DomainGrid::boundary_nodes() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < size(); ++k) {
        if (is_boundary(k)) out.push_back(k);
    }
    return out;
}

double DomainGrid::boundary_distance(std::size_t node) const {
    const Point& p = points_[node];
    switch (spec_.kind) {
        case DomainKind::interval:
            return std::max(0.0, std::min(p[0] - spec_.lower[0], spec_.upper[0] - p[0]));
        case DomainKind::rectangle:
            return std::max(0.0, std::min({p[0] - spec_.lower[0], spec_.upper[0] - p[0], p[1] - spec_.lower[1],
                                           spec_.upper[1] - p[1]}));
        case DomainKind::disk:
            return std::max(0.0, spec_.radius - std::hypot(p[0], p[1]));
    }
    return 0.0;
}

double DomainGrid::radius_of(std::size_t node) const {
    if (spec_.kind == DomainKind::disk) {
        const auto [i, j] = lattice(node);
        return i == spec_.resolution[0] ? spec_.radius : i * spacing_[0];
    }
    return std::hypot(points_[node][0], points_[node][1]);
}

double DomainGrid::angle_of(std::size_t node) const {
    if (spec_.kind == DomainKind::disk) {
        return lattice(node)[1] * spacing_[1];
    }
    return std::atan2(points_[node][1], points_[node][0]);
}

double diameter(const DomainSpec& spec) {
    switch (spec.kind) {
        case DomainKind::interval: return spec.upper[0] - spec.lower[0];
        case DomainKind::rectangle:
            return std::hypot(spec.upper[0] - spec.lower[0], spec.upper[1] - spec.lower[1]);
        case DomainKind::disk: return 2.0 * spec.radius;
    }
    return 0.0;
}

std::array<double, 2> radial_range(const DomainSpec& spec) {
    auto axis_range = [](double lo, double hi) {
        const double nearest = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
        const double farthest = std::max(std::abs(lo), std::abs(hi));
        return std::array<double, 2>{nearest, farthest};
    };
    switch (spec.kind) {
        case DomainKind::interval: return axis_range(spec.lower[0], spec.upper[0]);
        case DomainKind::rectangle: {
            const auto x = axis_range(spec.lower[0], spec.upper[0]);
            const auto y = axis_range(spec.lower[1], spec.upper[1]);
            return {std::hypot(x[0], y[0]), std::hypot(x[1], y[1])};
        }
        case DomainKind::disk: return {0.0, spec.radius};
    }
    return {0.0, 0.0};
}

DomainMetrics metrics(const DomainGrid& grid) {
    DomainMetrics m;
    m.diameter = diameter(grid.spec());
    m.min_curvature = grid.kind() == DomainKind::disk ? 1.0 / grid.spec().radius : 0.0;
    m.mean_curvature.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!grid.is_boundary(k) || grid.is_corner(k)) continue;
        m.mean_curvature[k] = grid.kind() == DomainKind::disk ? 1.0 / grid.spec().radius : 0.0;
    }
    return m;
}

}  // namespace gaplab
