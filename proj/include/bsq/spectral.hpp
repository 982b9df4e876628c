#pragma once

#include <complex>

#include "bsq/grid.hpp"
#include "bsq/types.hpp"

namespace bsq {

/// Half-spectrum of a real field: modes m = 0..n/2, unnormalized.
using Spectrum = Eigen::ArrayXcd;

/// Forward real-to-complex transform (unnormalized).
Spectrum to_spectrum(const Field& f);

/// Inverse transform with 1/n normalization; n is the physical grid size.
Field to_field(const Spectrum& s, int n);

/// Spectral derivative of the given order. The Nyquist mode is zeroed for
/// odd orders.
Field diff(const PeriodicGrid& grid, const Field& f, int order = 1);

/// Zero-mean antiderivative: returns g with diff(g) = f and mean(g) = 0.
/// The mean of f must vanish within mean_tol*(1 + max|f|).
Field antideriv(const PeriodicGrid& grid, const Field& f, double mean_tol = 1e-9);

/// Zeroes all modes with |m| > n/3 (2/3-rule dealiasing filter).
Field twothirds(const PeriodicGrid& grid, const Field& f);

/// Field mean.
double mean(const PeriodicGrid& grid, const Field& f);

/// Transfers f onto a grid with the same half-length but a different node
/// count by spectral padding/truncation.
Field resample(const PeriodicGrid& from, const Field& f, const PeriodicGrid& to);

/// Translates f by s (periodic, spectrally exact for band-limited data).
Field shift(const PeriodicGrid& grid, const Field& f, double s);

}  // namespace bsq
