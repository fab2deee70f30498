#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaplab/geometry.hpp"
#include "gaplab/sym2.hpp"

namespace gaplab {

enum class PotentialFamily { zero, harmonic, shifted_harmonic, double_well, tilted, random_smooth };

std::string to_string(PotentialFamily family);
PotentialFamily potential_family_from_string(const std::string& name);

/**
 * Potential family and parameters.
 *
 *   zero              V = 0
 *   harmonic          V = (c/2)|x|^2
 *   shifted_harmonic  V = (c/2)|x - center|^2
 *   double_well       V = a4 |x|^4 + a2 |x|^2           (a4 > 0, a2 < 0)
 *   tilted            V = slope . x
 *   random_smooth     V = amplitude * sum_m a_m cos(k_m . x + p_m), |k_m| <= wavenumber
 */
struct PotentialSpec {
    PotentialFamily family = PotentialFamily::zero;
    double c = 0.0;
    Point center{0.0, 0.0};
    double a4 = 0.0;
    double a2 = 0.0;
    Point slope{0.0, 0.0};
    std::uint64_t seed = 0;
    double amplitude = 0.0;
    double wavenumber = 0.0;

    static PotentialSpec zero();
    static PotentialSpec harmonic(double c);
    static PotentialSpec shifted_harmonic(double c, Point center);
    static PotentialSpec double_well(double a4, double a2);
    static PotentialSpec tilted(Point slope);
    static PotentialSpec random_smooth(std::uint64_t seed, double amplitude, double wavenumber);
};

/// Throws ConfigError when the family invariants fail.
void validate(const PotentialSpec& spec);

/// Closed-form evaluation of a potential in dimension 1 or 2.
class Potential {
public:
    Potential(const PotentialSpec& spec, int dimension);

    double value(const Point& x) const;
    Point gradient(const Point& x) const;
    Sym2 hessian(const Point& x) const;
    double laplacian(const Point& x) const { return hessian(x).trace(); }

    const PotentialSpec& spec() const noexcept { return spec_; }
    int dimension() const noexcept { return dim_; }

private:
    struct Mode {
        Point k;
        double coeff;
        double phase;
    };

    double radial_sq(const Point& x) const { return dim_ == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1]; }

    PotentialSpec spec_;
    int dim_;
    std::vector<Mode> modes_;
};

inline constexpr double kPotentialOverflow = 1e12;

/// Sampled potential together with the metadata the gap and Hessian estimates consume.
struct PotentialField {
    PotentialSpec spec;
    int dimension = 1;
    std::vector<double> values;
    /// Lower bound c of the smallest Hessian eigenvalue over the closed domain.
    double hessian_lb = 0.0;
    /// sup over the domain of Laplacian(V).
    double sup_laplacian = 0.0;
    /// dV/dnu per node; NaN off the boundary.
    std::vector<double> boundary_normal_derivative;
    /// r dV/dr = x . grad V per node.
    std::vector<double> radial_derivative;
    /// True when hessian_lb / sup_laplacian come from sampling rather than a closed form.
    bool metadata_estimated = false;

    Potential potential() const { return Potential(spec, dimension); }
};

/// Throws ConfigError on invalid spec or |V| above kPotentialOverflow.
PotentialField sample(const PotentialSpec& spec, const DomainGrid& grid);

/// Minimum over non-boundary nodes of the smallest eigenvalue of the central-difference Hessian of V.
double hessian_lb_numeric(const PotentialField& field, const DomainGrid& grid);

}  // namespace gaplab
