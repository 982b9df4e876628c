#include "bsq/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace bsq {

namespace {

// Plans are created once per size with FFTW_UNALIGNED so they can be executed
// on caller-owned arrays via the new-array interface (which is thread-safe;
// planning is not, hence the mutex).
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> real(n);
    std::vector<std::complex<double>> cplx(n / 2 + 1);
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_r2c_1d(n, real.data(), reinterpret_cast<fftw_complex*>(cplx.data()), flags);
    p.bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cplx.data()), real.data(), flags);
    return cache.emplace(n, p).first->second;
}

}  // namespace

Spectrum to_spectrum(const Field& f) {
    const int n = static_cast<int>(f.size());
    Spectrum out(n / 2 + 1);
    Field tmp = f;  // fftw may not preserve input
    fftw_execute_dft_r2c(plans_for(n).fwd, tmp.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

Field to_field(const Spectrum& s, int n) {
    Spectrum tmp = s;  // c2r destroys its input
    Field out(n);
    fftw_execute_dft_c2r(plans_for(n).bwd, reinterpret_cast<fftw_complex*>(tmp.data()),
                         out.data());
    return out / n;
}

Field diff(const PeriodicGrid& grid, const Field& f, int order) {
    if (order < 1) throw DomainError("diff: order must be >= 1");
    const int n = grid.size();
    if (f.size() != n) throw DomainError("diff: field length does not match grid");
    Spectrum s = to_spectrum(f);
    const std::complex<double> I(0.0, 1.0);
    for (int m = 0; m <= n / 2; ++m)
        s[m] *= std::pow(I * grid.wavenumber(m), order);
    if (order % 2 == 1) s[n / 2] = 0.0;  // Nyquist has no well-defined odd derivative
    return to_field(s, n);
}

double mean(const PeriodicGrid& grid, const Field& f) {
    return grid.integrate(f) / (2.0 * grid.half_length());
}

Field antideriv(const PeriodicGrid& grid, const Field& f, double mean_tol) {
    const int n = grid.size();
    if (f.size() != n) throw DomainError("antideriv: field length does not match grid");
    const double m = mean(grid, f);
    const double scale = 1.0 + f.abs().maxCoeff();
    if (std::abs(m) > mean_tol * scale)
        throw DomainError("antideriv: field mean " + std::to_string(m) +
                          " is not zero; the antiderivative is not periodic");
    Spectrum s = to_spectrum(f);
    const std::complex<double> I(0.0, 1.0);
    s[0] = 0.0;  // zero-mean gauge
    for (int k = 1; k <= n / 2; ++k) s[k] /= I * grid.wavenumber(k);
    return to_field(s, n);
}

Field twothirds(const PeriodicGrid& grid, const Field& f) {
    const int n = grid.size();
    if (f.size() != n) throw DomainError("twothirds: field length does not match grid");
    Spectrum s = to_spectrum(f);
    const int cut = n / 3;
    for (int m = cut + 1; m <= n / 2; ++m) s[m] = 0.0;
    return to_field(s, n);
}

Field resample(const PeriodicGrid& from, const Field& f, const PeriodicGrid& to) {
    if (from.half_length() != to.half_length())
        throw DomainError("resample: grids must share the half-length");
    if (f.size() != from.size()) throw DomainError("resample: field length does not match grid");
    const int n_from = from.size();
    const int n_to = to.size();
    if (n_from == n_to) return f;
    Spectrum s = to_spectrum(f) / n_from;
    Spectrum t = Spectrum::Zero(n_to / 2 + 1);
    const int keep = std::min(n_from, n_to) / 2;
    for (int m = 0; m <= keep; ++m) t[m] = s[m];
    if (n_to > n_from) t[keep] = std::real(t[keep]);  // split Nyquist stays real
    return to_field(t * n_to, n_to);
}

Field shift(const PeriodicGrid& grid, const Field& f, double s0) {
    const int n = grid.size();
    if (f.size() != n) throw DomainError("shift: field length does not match grid");
    Spectrum s = to_spectrum(f);
    const std::complex<double> I(0.0, 1.0);
    for (int m = 0; m <= n / 2; ++m) s[m] *= std::exp(-I * grid.wavenumber(m) * s0);
    s[n / 2] = std::real(s[n / 2]);  // keep the inverse transform real
    return to_field(s, n);
}

}  // namespace bsq
