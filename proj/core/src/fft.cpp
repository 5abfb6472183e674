#include "levylab/fft.hpp"

#include "levylab/errors.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace levylab::spectral {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

struct Fft::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    mutable std::mutex exec;
    std::size_t size = 0;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

Fft::Fft(const grid::TorusGrid& g) : grid_(g), impl_(std::make_unique<Impl>()) {
    if (g.dim < 1 || g.dim > 3) throw DomainError("Fft: dim must be 1, 2 or 3");
    impl_->size = g.size();
    impl_->in = fftw_alloc_complex(impl_->size);
    impl_->out = fftw_alloc_complex(impl_->size);
    if (!impl_->in || !impl_->out) throw NumericsError("Fft: allocation failed");
    int dims[3] = {g.n, g.n, g.n};
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_dft(g.dim, dims, impl_->in, impl_->out, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft(g.dim, dims, impl_->in, impl_->out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw NumericsError("Fft: planning failed");
}

Fft::~Fft() = default;

std::vector<std::complex<double>> Fft::forward(const std::vector<double>& u) const {
    if (u.size() != impl_->size) throw DomainError("Fft::forward: size mismatch");
    std::lock_guard<std::mutex> lock(impl_->exec);
    for (std::size_t i = 0; i < impl_->size; ++i) {
        impl_->in[i][0] = u[i];
        impl_->in[i][1] = 0.0;
    }
    fftw_execute(impl_->fwd);
    const double scale = grid_.cell_volume();
    std::vector<std::complex<double>> c(impl_->size);
    for (std::size_t i = 0; i < impl_->size; ++i)
        c[i] = {scale * impl_->out[i][0], scale * impl_->out[i][1]};
    return c;
}

std::vector<double> Fft::inverse(const std::vector<std::complex<double>>& c) const {
    if (c.size() != impl_->size) throw DomainError("Fft::inverse: size mismatch");
    std::lock_guard<std::mutex> lock(impl_->exec);
    for (std::size_t i = 0; i < impl_->size; ++i) {
        impl_->in[i][0] = c[i].real();
        impl_->in[i][1] = c[i].imag();
    }
    fftw_execute(impl_->bwd);
    double vol = 1.0;
    for (int d = 0; d < grid_.dim; ++d) vol *= grid_.length;
    const double scale = 1.0 / vol;
    std::vector<double> u(impl_->size);
    for (std::size_t i = 0; i < impl_->size; ++i) u[i] = scale * impl_->out[i][0];
    return u;
}

const Fft& fft_for(const grid::TorusGrid& g) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, double>, std::unique_ptr<Fft>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(g.dim, g.n, g.length);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Fft>(g)).first;
    return *it->second;
}

} // namespace levylab::spectral
