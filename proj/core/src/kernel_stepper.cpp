#include "levylab/kernel_stepper.hpp"

#include "levylab/errors.hpp"
#include "levylab/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace levylab::stepper {

namespace {

double resolve_rho(const grid::TorusGrid& g, const StepperOptions& opt) {
    const double rho = opt.truncation_radius > 0.0 ? opt.truncation_radius : 0.25 * g.length;
    if (rho >= 0.5 * g.length)
        throw DomainError("KernelStepper: truncation radius must be below L/2");
    return rho;
}

void check_grid_dims(const grid::TorusGrid& g, int kdim) {
    if (g.dim != kdim) throw DomainError("KernelStepper: kernel/grid dimension mismatch");
}

} // namespace

KernelStepper::KernelStepper(const grid::TorusGrid& g, const ops::RadialKernel& kernel,
                             const StepperOptions& opt)
    : grid_(g), opt_(opt), radial_(true) {
    check_grid_dims(g, kernel.dim);
    rho_ = resolve_rho(g, opt);

    const double h = g.h();
    const double vol = g.cell_volume();
    const int reach = static_cast<int>(rho_ / h);
    const int lo[3] = {-reach, g.dim > 1 ? -reach : 0, g.dim > 2 ? -reach : 0};
    const int hi[3] = {reach, g.dim > 1 ? reach : 0, g.dim > 2 ? reach : 0};
    for (int a = lo[0]; a <= hi[0]; ++a)
        for (int b = lo[1]; b <= hi[1]; ++b)
            for (int c = lo[2]; c <= hi[2]; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                const double r = h * std::sqrt(double(a) * a + double(b) * b + double(c) * c);
                if (r > rho_ || r >= kernel.cutoff) continue;
                const double w = kernel.density(r) * vol;
                if (w == 0.0) continue;
                offsets_.push_back({{a, b, c}, w});
                offset_row_sum_ += w;
            }

    if (kernel.cutoff > rho_) {
        auto f = [&](double s) { return (s >= kernel.cutoff ? 0.0 : kernel.ell(s)) / s; };
        const double tail = std::isfinite(kernel.cutoff)
                                ? quad::integrate(f, rho_, kernel.cutoff).value
                                : quad::integrate_upper(f, rho_).value;
        tail_mass_ = sf::sphere_area(g.dim) * tail;
    }
}

KernelStepper::KernelStepper(const grid::TorusGrid& g, const ops::GeneralKernel& kernel,
                             const StepperOptions& opt)
    : grid_(g), opt_(opt), radial_(false) {
    check_grid_dims(g, kernel.dim);
    rho_ = resolve_rho(g, opt);
    const std::size_t sz = g.size();
    if (sz > 2048)
        throw DomainError("KernelStepper: general kernels support at most 2048 cells; "
                          "use a radial kernel for larger grids");

    // Sample unordered pairs for asymmetry before trusting the kernel.
    std::mt19937_64 rng(opt.symmetry_seed);
    std::uniform_int_distribution<std::size_t> pick(0, sz - 1);
    double scale = 0.0;
    double worst = 0.0;
    for (int s = 0; s < opt.symmetry_samples; ++s) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (j == i) j = (j + 1) % sz;
        const double wij = kernel.eval(g.position(i), g.position(j));
        const double wji = kernel.eval(g.position(j), g.position(i));
        scale = std::max({scale, std::fabs(wij), std::fabs(wji)});
        worst = std::max(worst, std::fabs(wij - wji));
    }
    if (worst > opt.symmetry_tol * std::max(scale, 1e-300))
        throw DomainError("KernelStepper: sampled kernel asymmetry exceeds tolerance");

    const double vol = g.cell_volume();
    weights_.assign(sz * sz, 0.0);
    for (std::size_t i = 0; i < sz; ++i) {
        const auto xi = g.position(i);
        for (std::size_t j = i + 1; j < sz; ++j) {
            const auto xj = g.position(j);
            double d2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double dd = g.wrap(xi[d] - xj[d]);
                d2 += dd * dd;
            }
            if (d2 > rho_ * rho_) continue;
            const double w = kernel.eval(xi, xj) * vol;
            if (w < 0.0) throw DomainError("KernelStepper: negative kernel value");
            weights_[i * sz + j] = w;
            weights_[j * sz + i] = w;
        }
    }
    for (std::size_t i = 0; i < sz; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < sz; ++j) rs += weights_[i * sz + j];
        max_row_sum_ = std::max(max_row_sum_, rs);
    }
}

double KernelStepper::max_stable_dt() const {
    const double rs = radial_ ? offset_row_sum_ : max_row_sum_;
    return rs > 0.0 ? 1.0 / rs : std::numeric_limits<double>::infinity();
}

void KernelStepper::check_field(const std::vector<double>& f) const {
    if (f.size() != grid_.size()) throw DomainError("KernelStepper: field size mismatch");
    for (double v : f)
        if (!std::isfinite(v)) throw DomainError("KernelStepper: field has non-finite values");
}

std::vector<double> KernelStepper::apply_generator(const std::vector<double>& f) const {
    check_field(f);
    const std::size_t sz = f.size();
    std::vector<double> out(sz);
    if (radial_) {
        const int n = grid_.n;
        for (std::size_t i = 0; i < sz; ++i) {
            const auto m = grid_.unflatten(i);
            double nb = 0.0;
            for (const auto& off : offsets_) {
                std::array<int, 3> mj = m;
                for (int d = 0; d < grid_.dim; ++d) {
                    mj[d] += off.o[d];
                    if (mj[d] < 0) mj[d] += n;
                    else if (mj[d] >= n) mj[d] -= n;
                }
                nb += off.w * f[grid_.flatten(mj)];
            }
            out[i] = offset_row_sum_ * f[i] - nb;
        }
    } else {
        for (std::size_t i = 0; i < sz; ++i) {
            double acc = 0.0;
            const double* row = weights_.data() + i * sz;
            for (std::size_t j = 0; j < sz; ++j) acc += row[j] * (f[i] - f[j]);
            out[i] = acc;
        }
    }
    return out;
}

void KernelStepper::step(std::vector<double>& f, double dt) const {
    if (dt <= 0.0) throw DomainError("KernelStepper::step: dt must be positive");
    if (dt > max_stable_dt() * (1.0 + 1e-12))
        throw NumericsError("KernelStepper::step: dt violates the stability bound");
    const auto lf = apply_generator(f);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= dt * lf[i];
}

grid::ScalarField KernelStepper::evolve(const grid::ScalarField& u0, double t, double dt) const {
    if (!grid::same_grid(u0.grid, grid_)) throw DomainError("KernelStepper::evolve: grid mismatch");
    if (t < 0.0) throw DomainError("KernelStepper::evolve: t must be nonnegative");
    for (double v : u0.data)
        if (!std::isfinite(v)) throw DomainError("KernelStepper::evolve: non-finite input");

    grid::ScalarField u = u0;
    if (t == 0.0) return u;
    const double dt_cap = dt > 0.0 ? dt : opt_.dt_safety * max_stable_dt();
    const auto steps = static_cast<long>(std::ceil(t / dt_cap - 1e-12));
    const double dt_actual = t / static_cast<double>(std::max(steps, 1L));
    for (long s = 0; s < steps; ++s) step(u.data, dt_actual);
    return u;
}

double KernelStepper::energy(const std::vector<double>& f, const std::vector<double>& g) const {
    check_field(f);
    check_field(g);
    const std::size_t sz = f.size();
    const double vol = grid_.cell_volume();
    double acc = 0.0;
    if (radial_) {
        const int n = grid_.n;
        for (std::size_t i = 0; i < sz; ++i) {
            const auto m = grid_.unflatten(i);
            for (const auto& off : offsets_) {
                std::array<int, 3> mj = m;
                for (int d = 0; d < grid_.dim; ++d) {
                    mj[d] += off.o[d];
                    if (mj[d] < 0) mj[d] += n;
                    else if (mj[d] >= n) mj[d] -= n;
                }
                const std::size_t j = grid_.flatten(mj);
                acc += off.w * (f[i] - f[j]) * (g[i] - g[j]);
            }
        }
    } else {
        for (std::size_t i = 0; i < sz; ++i) {
            const double* row = weights_.data() + i * sz;
            for (std::size_t j = 0; j < sz; ++j)
                acc += row[j] * (f[i] - f[j]) * (g[i] - g[j]);
        }
    }
    return 0.5 * acc * vol;
}

grid::ScalarField evolve_kernel_stepper(const ops::GeneralKernel& kernel,
                                        const grid::ScalarField& u0, double dt, int steps,
                                        const StepperOptions& opt) {
    if (steps < 0) throw DomainError("evolve_kernel_stepper: steps must be nonnegative");
    KernelStepper s(u0.grid, kernel, opt);
    grid::ScalarField u = u0;
    for (int k = 0; k < steps; ++k) s.step(u.data, dt);
    return u;
}

double semigroup_adjoint_check(const KernelStepper& s, const grid::ScalarField& u0,
                               const grid::ScalarField& v0, double t, double dt) {
    const auto su = s.evolve(u0, t, dt);
    const auto sv = s.evolve(v0, t, dt);
    const double scale = grid::lp_norm(u0, 2.0) * grid::lp_norm(v0, 2.0);
    if (scale == 0.0) return 0.0;
    return std::fabs(grid::inner(u0, sv) - grid::inner(su, v0)) / scale;
}

} // namespace levylab::stepper
