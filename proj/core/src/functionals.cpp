#include "levylab/functionals.hpp"

#include "levylab/errors.hpp"
#include "levylab/fft.hpp"
#include "levylab/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace levylab::fn {

namespace {

double phi(double s) { return s > 0.0 ? s * std::log(s) : 0.0; }

grid::ScalarField pointwise_power(const grid::ScalarField& f, double e) {
    grid::ScalarField out = f;
    for (double& v : out.data) v = std::pow(v, e);
    return out;
}

/// |f|^{e-1} f with 0 mapped to 0.
grid::ScalarField signed_power(const grid::ScalarField& f, double e) {
    grid::ScalarField out = f;
    for (double& v : out.data) {
        const double a = std::fabs(v);
        v = a > 0.0 ? std::pow(a, e - 1.0) * v : 0.0;
    }
    return out;
}

} // namespace

double entropy(const grid::ScalarField& f, double p) {
    if (p < 1.0) throw DomainError("entropy: p must be >= 1");
    const double vol = f.grid.cell_volume();
    double sum = 0.0;
    double sum_phi = 0.0;
    for (double v : f.data) {
        const double a = std::pow(std::fabs(v), p);
        sum += a;
        sum_phi += phi(a);
    }
    return sum_phi * vol - phi(sum * vol);
}

double dirichlet_form_fourier(const ops::LevySymbol& symbol, const grid::ScalarField& f,
                              const grid::ScalarField& g) {
    if (!symbol.is_levy)
        throw DomainError("dirichlet_form_fourier: symbol is not a Levy symbol");
    if (!grid::same_grid(f.grid, g.grid)) throw DomainError("dirichlet_form_fourier: grid mismatch");
    if (symbol.dim != f.grid.dim)
        throw DomainError("dirichlet_form_fourier: symbol/grid dimension mismatch");

    const spectral::Fft& fft = spectral::fft_for(f.grid);
    const auto fc = fft.forward(f.data);
    const auto gc = fft.forward(g.data);
    double vol = 1.0;
    for (int d = 0; d < f.grid.dim; ++d) vol *= f.grid.length;
    double s = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const double m = symbol.eval(f.grid.frequency_norm(i));
        s += m * (fc[i].real() * gc[i].real() + fc[i].imag() * gc[i].imag());
    }
    return s / vol;
}

double dirichlet_form_kernel(const ops::RadialKernel& kernel, const grid::ScalarField& f,
                             const grid::ScalarField& g, const stepper::StepperOptions& opt) {
    if (!grid::same_grid(f.grid, g.grid)) throw DomainError("dirichlet_form_kernel: grid mismatch");
    stepper::KernelStepper s(f.grid, kernel, opt);
    return s.energy(f.data, g.data);
}

double dirichlet_form_kernel(const ops::GeneralKernel& kernel, const grid::ScalarField& f,
                             const grid::ScalarField& g, const stepper::StepperOptions& opt) {
    if (!grid::same_grid(f.grid, g.grid)) throw DomainError("dirichlet_form_kernel: grid mismatch");
    stepper::KernelStepper s(f.grid, kernel, opt);
    return s.energy(f.data, g.data);
}

DirichletFormHandle fourier_form(const ops::LevySymbol& symbol) {
    return [symbol](const grid::ScalarField& f, const grid::ScalarField& g) {
        return dirichlet_form_fourier(symbol, f, g);
    };
}

DirichletFormHandle kernel_form(const ops::RadialKernel& kernel, const grid::TorusGrid& g,
                                const stepper::StepperOptions& opt) {
    auto s = std::make_shared<stepper::KernelStepper>(g, kernel, opt);
    return [s, g](const grid::ScalarField& f, const grid::ScalarField& h) {
        if (!grid::same_grid(f.grid, g) || !grid::same_grid(h.grid, g))
            throw DomainError("kernel_form: grid mismatch");
        return s->energy(f.data, h.data);
    };
}

DirichletFormHandle kernel_form(const ops::GeneralKernel& kernel, const grid::TorusGrid& g,
                                const stepper::StepperOptions& opt) {
    auto s = std::make_shared<stepper::KernelStepper>(g, kernel, opt);
    return [s, g](const grid::ScalarField& f, const grid::ScalarField& h) {
        if (!grid::same_grid(f.grid, g) || !grid::same_grid(h.grid, g))
            throw DomainError("kernel_form: grid mismatch");
        return s->energy(f.data, h.data);
    };
}

double plog_sobolev_residual(const grid::ScalarField& f, double p, const LogSobFamily& fam,
                             const DirichletFormHandle& form) {
    if (p < 2.0) throw DomainError("plog_sobolev_residual: p must be >= 2");
    const double mass_p = std::pow(grid::lp_norm(f, p), p);
    const double energy = form(signed_power(f, p - 1.0), f);
    return entropy(f, p) - fam.C(p) * mass_p - fam.D(p) * energy;
}

double stroock_varopoulos_gap(const grid::ScalarField& f, double p,
                              const DirichletFormHandle& form) {
    if (p <= 1.0) throw DomainError("stroock_varopoulos_gap: p must exceed 1");
    for (double v : f.data)
        if (v < 0.0) throw DomainError("stroock_varopoulos_gap: f must be nonnegative");
    const auto half = pointwise_power(f, 0.5 * p);
    const auto pm1 = pointwise_power(f, p - 1.0);
    return (p * p / (4.0 * (p - 1.0))) * form(pm1, f) - form(half, half);
}

double ddt_identity_check(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                          const std::function<double(double)>& q, double t, double delta) {
    if (delta <= 0.0) throw DomainError("ddt_identity_check: delta must be positive");
    if (t < delta) throw DomainError("ddt_identity_check: need t >= delta");
    for (double v : u0.data)
        if (v <= 0.0) throw DomainError("ddt_identity_check: u0 must be strictly positive");

    const double vol = u0.grid.cell_volume();
    auto weight = [&](const grid::ScalarField& u, double qq) {
        double s = 0.0;
        for (double v : u.data) s += std::pow(v, qq);
        return s * vol;
    };
    auto positive = [](const grid::ScalarField& u) {
        return std::all_of(u.data.begin(), u.data.end(), [](double v) { return v > 0.0; });
    };

    const auto um = spectral::evolve_spectral(symbol, u0, t - delta);
    const auto uc = spectral::evolve_spectral(symbol, u0, t);
    const auto up = spectral::evolve_spectral(symbol, u0, t + delta);
    if (!positive(um) || !positive(uc) || !positive(up))
        throw DomainError("ddt_identity_check: evolved field lost strict positivity");

    const double lhs = (weight(up, q(t + delta)) - weight(um, q(t - delta))) / (2.0 * delta);

    const double qt = q(t);
    const double hq = 1e-6 * std::max(1.0, std::fabs(t));
    const double dq = (q(t + hq) - q(t - hq)) / (2.0 * hq);
    const double big_u = weight(uc, qt);
    const double ent = entropy(uc, qt);
    const double energy = dirichlet_form_fourier(symbol, pointwise_power(uc, qt - 1.0), uc);
    const double rhs = (dq / qt) * (ent + phi(big_u)) - qt * energy;

    return std::fabs(lhs - rhs);
}

} // namespace levylab::fn
