#pragma once

#include "levylab/grid.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace levylab::spectral {

/// Complex-to-complex FFT pair on a TorusGrid, with the continuum-flavoured
/// normalization
///   uhat_k = h^N sum_j u_j exp(-i x_j . xi_k),
///   u_j    = L^{-N} sum_k uhat_k exp(+i x_j . xi_k),
/// so Plancherel reads h^N sum |u|^2 = L^{-N} sum |uhat|^2. Each instance
/// owns its buffers and serializes execution; plan creation is guarded by a
/// process-wide lock as required by FFTW.
class Fft {
public:
    explicit Fft(const grid::TorusGrid& g);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::vector<std::complex<double>> forward(const std::vector<double>& u) const;
    std::vector<double> inverse(const std::vector<std::complex<double>>& c) const;

    const grid::TorusGrid& grid() const { return grid_; }

private:
    struct Impl;
    grid::TorusGrid grid_;
    std::unique_ptr<Impl> impl_;
};

/// Shared per-shape FFT instance (plans are reused across calls).
const Fft& fft_for(const grid::TorusGrid& g);

} // namespace levylab::spectral
