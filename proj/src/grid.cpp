#include "bsq/grid.hpp"

#include <cmath>

namespace bsq {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

PeriodicGrid::PeriodicGrid(double half_length, int n) : half_length_(half_length), n_(n) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw DomainError("PeriodicGrid: half-length must be positive and finite");
    if (!power_of_two(n) || n < 4)
        throw DomainError("PeriodicGrid: node count must be a power of two >= 4");
}

Field PeriodicGrid::nodes() const {
    Field x(n_);
    for (int j = 0; j < n_; ++j) x[j] = node(j);
    return x;
}

double PeriodicGrid::wavenumber(int m) const { return m * M_PI / half_length_; }

double PeriodicGrid::integrate(const Field& f) const {
    if (f.size() != n_) throw DomainError("integrate: field length does not match grid");
    return spacing() * f.sum();
}

}  // namespace bsq
