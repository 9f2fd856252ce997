#include "gvns/grid.hpp"

#include <string>

#include "gvns/errors.hpp"

namespace gvns {

GridSpec::GridSpec(int n, double length) : n_(n), length_(length), cutoff_((n - 1) / 3) {
    if (n < 8 || n % 2 != 0) {
        throw ValidationError("grid: n must be even and >= 8, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ValidationError("grid: length must be positive and finite");
    }
}

}  // namespace gvns
