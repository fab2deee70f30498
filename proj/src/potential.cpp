#include "gaplab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gaplab/error.hpp"
#include "gaplab/stencil.hpp"

namespace gaplab {

std::string to_string(PotentialFamily family) {
    switch (family) {
        case PotentialFamily::zero: return "zero";
        case PotentialFamily::harmonic: return "harmonic";
        case PotentialFamily::shifted_harmonic: return "shifted_harmonic";
        case PotentialFamily::double_well: return "double_well";
        case PotentialFamily::tilted: return "tilted";
        case PotentialFamily::random_smooth: return "random_smooth";
    }
    return "unknown";
}

PotentialFamily potential_family_from_string(const std::string& name) {
    if (name == "zero") return PotentialFamily::zero;
    if (name == "harmonic") return PotentialFamily::harmonic;
    if (name == "shifted_harmonic") return PotentialFamily::shifted_harmonic;
    if (name == "double_well") return PotentialFamily::double_well;
    if (name == "tilted") return PotentialFamily::tilted;
    if (name == "random_smooth") return PotentialFamily::random_smooth;
    throw ConfigError("unknown potential family '" + name + "'");
}

PotentialSpec PotentialSpec::zero() { return {}; }

PotentialSpec PotentialSpec::harmonic(double c) {
    PotentialSpec s;
    s.family = PotentialFamily::harmonic;
    s.c = c;
    return s;
}

PotentialSpec PotentialSpec::shifted_harmonic(double c, Point center) {
    PotentialSpec s;
    s.family = PotentialFamily::shifted_harmonic;
    s.c = c;
    s.center = center;
    return s;
}

PotentialSpec PotentialSpec::double_well(double a4, double a2) {
    PotentialSpec s;
    s.family = PotentialFamily::double_well;
    s.a4 = a4;
    s.a2 = a2;
    return s;
}

PotentialSpec PotentialSpec::tilted(Point slope) {
    PotentialSpec s;
    s.family = PotentialFamily::tilted;
    s.slope = slope;
    return s;
}

PotentialSpec PotentialSpec::random_smooth(std::uint64_t seed, double amplitude, double wavenumber) {
    PotentialSpec s;
    s.family = PotentialFamily::random_smooth;
    s.seed = seed;
    s.amplitude = amplitude;
    s.wavenumber = wavenumber;
    return s;
}

void validate(const PotentialSpec& spec) {
    switch (spec.family) {
        case PotentialFamily::harmonic:
        case PotentialFamily::shifted_harmonic:
            if (!(spec.c > 0.0)) throw ConfigError("harmonic potential requires c > 0");
            break;
        case PotentialFamily::double_well:
            if (!(spec.a4 > 0.0) || !(spec.a2 < 0.0)) {
                throw ConfigError("double_well requires a4 > 0 and a2 < 0");
            }
            break;
        case PotentialFamily::random_smooth:
            if (!(spec.amplitude >= 0.0)) throw ConfigError("random_smooth amplitude must be >= 0");
            if (!(spec.wavenumber >= 0.0)) throw ConfigError("random_smooth wavenumber must be >= 0");
            break;
        case PotentialFamily::zero:
        case PotentialFamily::tilted:
            break;
    }
}

namespace {

constexpr int kRandomModes = 8;

// Uniform [0,1) from the raw 64-bit stream; std distributions are not portable bit-for-bit.
double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

Potential::Potential(const PotentialSpec& spec, int dimension) : spec_(spec), dim_(dimension) {
    validate(spec_);
    if (spec_.family == PotentialFamily::random_smooth) {
        std::mt19937_64 gen(spec_.seed);
        modes_.reserve(kRandomModes);
        for (int m = 0; m < kRandomModes; ++m) {
            const double magnitude = spec_.wavenumber * unit_uniform(gen);
            const double direction = 2.0 * std::numbers::pi * unit_uniform(gen);
            const double coeff = (2.0 * unit_uniform(gen) - 1.0) / kRandomModes;
            const double phase = 2.0 * std::numbers::pi * unit_uniform(gen);
            Point k = dim_ == 1 ? Point{std::cos(direction) >= 0.0 ? magnitude : -magnitude, 0.0}
                                : Point{magnitude * std::cos(direction), magnitude * std::sin(direction)};
            modes_.push_back({k, coeff, phase});
        }
    }
}

double Potential::value(const Point& x) const {
    const double y = dim_ == 1 ? 0.0 : x[1];
    switch (spec_.family) {
        case PotentialFamily::zero: return 0.0;
        case PotentialFamily::harmonic: return 0.5 * spec_.c * radial_sq(x);
        case PotentialFamily::shifted_harmonic: {
            const double dx = x[0] - spec_.center[0];
            const double dy = dim_ == 1 ? 0.0 : y - spec_.center[1];
            return 0.5 * spec_.c * (dx * dx + dy * dy);
        }
        case PotentialFamily::double_well: {
            const double r2 = radial_sq(x);
            return spec_.a4 * r2 * r2 + spec_.a2 * r2;
        }
        case PotentialFamily::tilted: return spec_.slope[0] * x[0] + (dim_ == 1 ? 0.0 : spec_.slope[1] * y);
        case PotentialFamily::random_smooth: {
            double v = 0.0;
            for (const auto& m : modes_) v += m.coeff * std::cos(m.k[0] * x[0] + m.k[1] * y + m.phase);
            return spec_.amplitude * v;
        }
    }
    return 0.0;
}

Point Potential::gradient(const Point& x) const {
    const double y = dim_ == 1 ? 0.0 : x[1];
    Point g{0.0, 0.0};
    switch (spec_.family) {
        case PotentialFamily::zero: break;
        case PotentialFamily::harmonic: g = {spec_.c * x[0], spec_.c * y}; break;
        case PotentialFamily::shifted_harmonic:
            g = {spec_.c * (x[0] - spec_.center[0]), dim_ == 1 ? 0.0 : spec_.c * (y - spec_.center[1])};
            break;
        case PotentialFamily::double_well: {
            const double s = 4.0 * spec_.a4 * radial_sq(x) + 2.0 * spec_.a2;
            g = {s * x[0], s * y};
            break;
        }
        case PotentialFamily::tilted: g = {spec_.slope[0], dim_ == 1 ? 0.0 : spec_.slope[1]}; break;
        case PotentialFamily::random_smooth:
            for (const auto& m : modes_) {
                const double s = -spec_.amplitude * m.coeff * std::sin(m.k[0] * x[0] + m.k[1] * y + m.phase);
                g[0] += s * m.k[0];
                g[1] += s * m.k[1];
            }
            break;
    }
    return g;
}

Sym2 Potential::hessian(const Point& x) const {
    const double y = dim_ == 1 ? 0.0 : x[1];
    Sym2 h;
    switch (spec_.family) {
        case PotentialFamily::zero:
        case PotentialFamily::tilted: break;
        case PotentialFamily::harmonic:
        case PotentialFamily::shifted_harmonic:
            h.xx = spec_.c;
            h.yy = dim_ == 1 ? 0.0 : spec_.c;
            break;
        case PotentialFamily::double_well: {
            // grad V = (4 a4 r^2 + 2 a2) x  =>  H = (4 a4 r^2 + 2 a2) I + 8 a4 x x^T.
            const double s = 4.0 * spec_.a4 * radial_sq(x) + 2.0 * spec_.a2;
            h.xx = s + 8.0 * spec_.a4 * x[0] * x[0];
            if (dim_ == 2) {
                h.xy = 8.0 * spec_.a4 * x[0] * y;
                h.yy = s + 8.0 * spec_.a4 * y * y;
            }
            break;
        }
        case PotentialFamily::random_smooth:
            for (const auto& m : modes_) {
                const double s = -spec_.amplitude * m.coeff * std::cos(m.k[0] * x[0] + m.k[1] * y + m.phase);
                h.xx += s * m.k[0] * m.k[0];
                h.xy += s * m.k[0] * m.k[1];
                h.yy += s * m.k[1] * m.k[1];
            }
            break;
    }
    return h;
}

PotentialField sample(const PotentialSpec& spec, const DomainGrid& grid) {
    const int dim = grid.dimension();
    const Potential pot(spec, dim);

    PotentialField field;
    field.spec = spec;
    field.dimension = dim;
    field.values.resize(grid.size());
    field.radial_derivative.resize(grid.size());
    field.boundary_normal_derivative.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point& x = grid.point(k);
        const double v = pot.value(x);
        if (!std::isfinite(v) || std::abs(v) > kPotentialOverflow) {
            throw ConfigError("potential value exceeds overflow threshold at node " + std::to_string(k));
        }
        field.values[k] = v;
        const Point g = pot.gradient(x);
        field.radial_derivative[k] = x[0] * g[0] + (dim == 1 ? 0.0 : x[1] * g[1]);
        if (grid.is_boundary(k)) {
            const Point& n = grid.normal(k);
            field.boundary_normal_derivative[k] = g[0] * n[0] + g[1] * n[1];
        }
    }

    const auto [r_min, r_max] = radial_range(grid.spec());
    const double n = dim;
    switch (spec.family) {
        case PotentialFamily::zero:
        case PotentialFamily::tilted:
            field.hessian_lb = 0.0;
            field.sup_laplacian = 0.0;
            break;
        case PotentialFamily::harmonic:
        case PotentialFamily::shifted_harmonic:
            field.hessian_lb = spec.c;
            field.sup_laplacian = n * spec.c;
            break;
        case PotentialFamily::double_well:
            // Smallest Hessian eigenvalue: 12 a4 r^2 + 2 a2 in 1D, 4 a4 r^2 + 2 a2 (tangential) in 2D.
            if (dim == 1) {
                field.hessian_lb = 12.0 * spec.a4 * r_min * r_min + 2.0 * spec.a2;
                field.sup_laplacian = 12.0 * spec.a4 * r_max * r_max + 2.0 * spec.a2;
            } else {
                field.hessian_lb = 4.0 * spec.a4 * r_min * r_min + 2.0 * spec.a2;
                field.sup_laplacian = 16.0 * spec.a4 * r_max * r_max + 4.0 * spec.a2;
            }
            break;
        case PotentialFamily::random_smooth: {
            double lb = std::numeric_limits<double>::infinity();
            double sup = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const Sym2 h = pot.hessian(grid.point(k));
                lb = std::min(lb, h.min_eigenvalue(dim));
                sup = std::max(sup, h.trace());
            }
            field.hessian_lb = lb;
            field.sup_laplacian = sup;
            field.metadata_estimated = true;
            break;
        }
    }
    return field;
}

double hessian_lb_numeric(const PotentialField& field, const DomainGrid& grid) {
    double lb = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!has_full_stencil(grid, k)) continue;
        lb = std::min(lb, local_derivatives(grid, field.values, k).hessian.min_eigenvalue(grid.dimension()));
    }
    return lb;
}

}  // namespace gaplab
