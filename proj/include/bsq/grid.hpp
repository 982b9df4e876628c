#pragma once

#include "bsq/types.hpp"

namespace bsq {

/// Uniform periodic grid on [-L, L) with a power-of-two node count.
///
/// Node j sits at x_j = -L + j*(2L/n); the resolvable wavenumbers are the
/// integer multiples m*pi/L with |m| <= n/2.
class PeriodicGrid {
public:
    PeriodicGrid(double half_length, int n);

    double half_length() const { return half_length_; }
    int size() const { return n_; }
    double spacing() const { return 2.0 * half_length_ / n_; }
    double node(int j) const { return -half_length_ + j * spacing(); }
    Field nodes() const;

    /// Wavenumber of signed mode index m.
    double wavenumber(int m) const;

    /// Trapezoidal quadrature (spectrally exact for smooth periodic integrands).
    double integrate(const Field& f) const;

    bool same_as(const PeriodicGrid& other) const {
        return n_ == other.n_ && half_length_ == other.half_length_;
    }

private:
    double half_length_;
    int n_;
};

}  // namespace bsq
