#include "levylab/symbols.hpp"
#include "levylab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace levylab::ops {

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > 3)
        throw DomainError("builtin_symbol: dimension must be 1, 2 or 3");
}

} // namespace

LevySymbol builtin_symbol(const std::string& kind, int dim, double sigma) {
    check_dim(dim);
    LevySymbol s;
    s.name = kind;
    s.dim = dim;
    if (kind == "laplacian") {
        s.eval = [](double r) { return r * r; };
    } else if (kind == "fractional") {
        if (!(sigma > 0.0 && sigma < 2.0))
            throw DomainError("builtin_symbol: fractional order must lie in (0,2)");
        s.name = "fractional_" + std::to_string(sigma);
        s.eval = [sigma](double r) { return std::pow(r, sigma); };
    } else if (kind == "log_bessel") {
        s.eval = [](double r) { return std::log1p(r * r); };
    } else if (kind == "log_riesz") {
        s.is_levy = false;
        // m(0) := 0 keeps the discrete DC mode finite; the continuum symbol
        // diverges to -inf at the origin
        s.eval = [](double r) { return r > 0.0 ? 2.0 * std::log(r) : 0.0; };
    } else if (kind == "zero_order_gaussian") {
        s.eval = [](double r) { return -std::expm1(-r * r); };
    } else {
        throw DomainError("builtin_symbol: unknown kind '" + kind + "'");
    }
    return s;
}

SandwichConstants sandwich_constants(const LevySymbol& symbol, double rmin,
                                     double rmax, int npoints) {
    if (!(rmin > 0.0) || !(rmax > rmin) || npoints < 2)
        throw DomainError("sandwich_constants: need 0 < rmin < rmax, npoints >= 2");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    const double step = std::log(rmax / rmin) / (npoints - 1);
    for (int i = 0; i < npoints; ++i) {
        const double r = rmin * std::exp(i * step);
        const double m = symbol.eval(r);
        lo = std::min(lo, m / std::min(1.0, r * r));
        hi = std::max(hi, m / std::max(1.0, r * r));
    }
    return {lo, hi};
}

} // namespace levylab::ops
