#include "gaplab/stencil.hpp"

#include <cmath>
#include <stdexcept>

namespace gaplab {

bool has_full_stencil(const DomainGrid& grid, std::size_t node) {
    if (grid.is_boundary(node)) return false;
    if (grid.kind() == DomainKind::disk) {
        return grid.lattice(node)[0] < grid.spec().resolution[0];
    }
    return true;
}

namespace {

LocalDerivatives disk_center(const DomainGrid& grid, std::span<const double> f) {
    const int nt = grid.spec().resolution[1];
    const double dr = grid.spacing()[0];
    const double dt = grid.spacing()[1];
    const int half = nt / 2;
    const double f0 = f[0];

    // Along ray j: f(+dr) + f(-dr) - 2 f0 = dr^2 e^T H e and f(+dr) - f(-dr) = 2 dr g.e.
    // Fourier coefficients of these over j recover H and g.
    double q_mean = 0.0, q_cos2 = 0.0, q_sin2 = 0.0, p_cos = 0.0, p_sin = 0.0;
    for (int j = 0; j < nt; ++j) {
        const double t = j * dt;
        const double fp = f[grid.flat(1, j)];
        const double fm = f[grid.flat(1, j + half)];
        const double q = (fp + fm - 2.0 * f0) / (dr * dr);
        const double p = (fp - fm) / (2.0 * dr);
        q_mean += q;
        q_cos2 += q * std::cos(2.0 * t);
        q_sin2 += q * std::sin(2.0 * t);
        p_cos += p * std::cos(t);
        p_sin += p * std::sin(t);
    }
    q_mean /= nt;
    q_cos2 /= nt;
    q_sin2 /= nt;
    p_cos /= nt;
    p_sin /= nt;

    LocalDerivatives d;
    const double half_trace = q_mean;
    const double half_diff = 2.0 * q_cos2;
    d.hessian = {half_trace + half_diff, 2.0 * q_sin2, half_trace - half_diff};
    d.gradient = {2.0 * p_cos, 2.0 * p_sin};
    d.laplacian = d.hessian.trace();
    return d;
}

LocalDerivatives disk_ring(const DomainGrid& grid, std::span<const double> f, std::size_t node) {
    const auto [i, j] = grid.lattice(node);
    const double dr = grid.spacing()[0];
    const double dt = grid.spacing()[1];
    const double r = grid.radius_of(node);

    const double fc = f[node];
    const double fo = f[grid.flat(i + 1, j)];
    const double fi = f[grid.flat(i - 1, j)];
    const double fl = f[grid.flat(i, j - 1)];
    const double fh = f[grid.flat(i, j + 1)];

    PolarParts p;
    p.r = r;
    p.f_r = (fo - fi) / (2.0 * dr);
    p.f_rr = (fo - 2.0 * fc + fi) / (dr * dr);
    p.f_t = (fh - fl) / (2.0 * dt);
    p.f_tt = (fh - 2.0 * fc + fl) / (dt * dt);
    p.f_rt = (f[grid.flat(i + 1, j + 1)] - f[grid.flat(i + 1, j - 1)] - f[grid.flat(i - 1, j + 1)] +
              f[grid.flat(i - 1, j - 1)]) /
             (4.0 * dr * dt);

    const double c = std::cos(j * dt);
    const double s = std::sin(j * dt);
    const double h_rr = p.f_rr;
    const double h_tt = p.f_r / r + p.f_tt / (r * r);
    const double h_rt = p.f_rt / r - p.f_t / (r * r);

    LocalDerivatives d;
    const double g_t = p.f_t / r;
    d.gradient = {p.f_r * c - g_t * s, p.f_r * s + g_t * c};
    // H = h_rr e_r e_r^T + h_tt e_t e_t^T + h_rt (e_r e_t^T + e_t e_r^T), e_r = (c, s), e_t = (-s, c).
    d.hessian.xx = h_rr * c * c + h_tt * s * s - 2.0 * h_rt * c * s;
    d.hessian.yy = h_rr * s * s + h_tt * c * c + 2.0 * h_rt * c * s;
    d.hessian.xy = (h_rr - h_tt) * c * s + h_rt * (c * c - s * s);
    d.laplacian = h_rr + h_tt;
    d.polar = p;
    return d;
}

}  // namespace

LocalDerivatives local_derivatives(const DomainGrid& grid, std::span<const double> f, std::size_t node) {
    if (!has_full_stencil(grid, node)) {
        throw std::invalid_argument("node has no full central-difference stencil");
    }
    switch (grid.kind()) {
        case DomainKind::interval: {
            const double h = grid.spacing()[0];
            LocalDerivatives d;
            d.gradient = {(f[node + 1] - f[node - 1]) / (2.0 * h), 0.0};
            d.hessian.xx = (f[node + 1] - 2.0 * f[node] + f[node - 1]) / (h * h);
            d.laplacian = d.hessian.xx;
            return d;
        }
        case DomainKind::rectangle: {
            const auto [i, j] = grid.lattice(node);
            const double hx = grid.spacing()[0];
            const double hy = grid.spacing()[1];
            const double fc = f[node];
            const double fe = f[grid.flat(i + 1, j)];
            const double fw = f[grid.flat(i - 1, j)];
            const double fn = f[grid.flat(i, j + 1)];
            const double fs = f[grid.flat(i, j - 1)];
            LocalDerivatives d;
            d.gradient = {(fe - fw) / (2.0 * hx), (fn - fs) / (2.0 * hy)};
            d.hessian.xx = (fe - 2.0 * fc + fw) / (hx * hx);
            d.hessian.yy = (fn - 2.0 * fc + fs) / (hy * hy);
            d.hessian.xy = (f[grid.flat(i + 1, j + 1)] - f[grid.flat(i + 1, j - 1)] - f[grid.flat(i - 1, j + 1)] +
                            f[grid.flat(i - 1, j - 1)]) /
                           (4.0 * hx * hy);
            d.laplacian = d.hessian.trace();
            return d;
        }
        case DomainKind::disk:
            return node == 0 ? disk_center(grid, f) : disk_ring(grid, f, node);
    }
    return {};
}

double tangential_derivative(const DomainGrid& grid, std::span<const double> f, std::size_t node) {
    switch (grid.kind()) {
        case DomainKind::interval: return 0.0;
        case DomainKind::rectangle: {
            if (grid.is_corner(node)) return 0.0;
            const auto [i, j] = grid.lattice(node);
            const int nx = grid.spec().resolution[0];
            if (i == 0 || i == nx - 1) {
                return (f[grid.flat(i, j + 1)] - f[grid.flat(i, j - 1)]) / (2.0 * grid.spacing()[1]);
            }
            return (f[grid.flat(i + 1, j)] - f[grid.flat(i - 1, j)]) / (2.0 * grid.spacing()[0]);
        }
        case DomainKind::disk: {
            const auto [i, j] = grid.lattice(node);
            const double r = grid.radius_of(node);
            return (f[grid.flat(i, j + 1)] - f[grid.flat(i, j - 1)]) / (2.0 * grid.spacing()[1] * r);
        }
    }
    return 0.0;
}

std::array<std::size_t, 3> inward_line(const DomainGrid& grid, std::size_t node) {
    const auto [i, j] = grid.lattice(node);
    switch (grid.kind()) {
        case DomainKind::interval: {
            const int step = (i == 0) ? 1 : -1;
            return {grid.flat(i + step, 0), grid.flat(i + 2 * step, 0), grid.flat(i + 3 * step, 0)};
        }
        case DomainKind::rectangle: {
            const int nx = grid.spec().resolution[0];
            if (i == 0 || i == nx - 1) {
                const int step = (i == 0) ? 1 : -1;
                return {grid.flat(i + step, j), grid.flat(i + 2 * step, j), grid.flat(i + 3 * step, j)};
            }
            const int step = (j == 0) ? 1 : -1;
            return {grid.flat(i, j + step), grid.flat(i, j + 2 * step), grid.flat(i, j + 3 * step)};
        }
        case DomainKind::disk:
            return {grid.flat(i - 1, j), grid.flat(i - 2, j), grid.flat(i - 3, j)};
    }
    return {node, node, node};
}

double inward_spacing(const DomainGrid& grid, std::size_t node) {
    if (grid.kind() == DomainKind::rectangle) {
        const int i = grid.lattice(node)[0];
        const int nx = grid.spec().resolution[0];
        return (i == 0 || i == nx - 1) ? grid.spacing()[0] : grid.spacing()[1];
    }
    return grid.spacing()[0];
}

double normal_derivative(const DomainGrid& grid, std::span<const double> f, std::size_t node) {
    const auto line = inward_line(grid, node);
    const double h = inward_spacing(grid, node);
    // Outward derivative: (3 f0 - 4 f1 + f2) / (2h) with f1, f2 stepping inward.
    return (3.0 * f[node] - 4.0 * f[line[0]] + f[line[1]]) / (2.0 * h);
}

}  // namespace gaplab
