#pragma once

#include <cmath>

namespace gaplab {

/// Symmetric 2x2 matrix. One-dimensional problems use only xx.
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const noexcept { return xx + yy; }

    double min_eigenvalue(int dimension) const noexcept {
        if (dimension == 1) return xx;
        const double mean = 0.5 * (xx + yy);
        const double half_diff = 0.5 * (xx - yy);
        return mean - std::hypot(half_diff, xy);
    }

    double min_diagonal(int dimension) const noexcept { return dimension == 1 ? xx : (xx < yy ? xx : yy); }
};

}  // namespace gaplab
