#include "levylab/quadrature.hpp"
#include "levylab/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace levylab::quad {

namespace {

struct DisableGslAbort {
    DisableGslAbort() { gsl_set_error_handler_off(); }
};
const DisableGslAbort disable_gsl_abort{};

// Per-thread free list of workspaces. Integrands may themselves integrate
// (subordination kernels inside mass integrals), so nested calls must each
// hold their own workspace; a lone thread_local one would be corrupted by
// re-entry.
struct WorkspacePool {
    std::vector<std::pair<gsl_integration_workspace*, std::size_t>> free_list;
    ~WorkspacePool() {
        for (auto& [ws, limit] : free_list) gsl_integration_workspace_free(ws);
    }
    gsl_integration_workspace* acquire(std::size_t want) {
        while (!free_list.empty()) {
            auto [ws, limit] = free_list.back();
            free_list.pop_back();
            if (limit >= want) return ws;
            gsl_integration_workspace_free(ws);
        }
        return gsl_integration_workspace_alloc(want);
    }
    void release(gsl_integration_workspace* ws, std::size_t limit) {
        free_list.emplace_back(ws, limit);
    }
};

thread_local WorkspacePool workspace_pool;

struct WorkspaceLease {
    gsl_integration_workspace* ws;
    std::size_t limit;
    explicit WorkspaceLease(std::size_t want)
        : ws(workspace_pool.acquire(want)), limit(std::max(want, ws->limit)) {}
    ~WorkspaceLease() { workspace_pool.release(ws, limit); }
    WorkspaceLease(const WorkspaceLease&) = delete;
    WorkspaceLease& operator=(const WorkspaceLease&) = delete;
};

double call_trampoline(double x, void* params) {
    const auto* f = static_cast<const Integrand*>(params);
    return (*f)(x);
}

QuadResult check(int status, double value, double abserr, const QuadratureSpec& spec,
                 const char* who) {
    if (status == GSL_SUCCESS) return {value, abserr};
    // Roundoff-limited refinement is not failure: GSL's abserr estimate is
    // conservative and the result still carries it. Anything worse than six
    // relative digits is treated as a genuine miss.
    double budget = std::max(spec.abs_tol, 10.0 * spec.rel_tol * std::abs(value));
    if (status == GSL_EROUND) budget = std::max(budget, 1e-6 * std::abs(value));
    if ((status == GSL_EROUND || status == GSL_EMAXITER || status == GSL_EDIVERGE) &&
        abserr <= budget && std::isfinite(value))
        return {value, abserr};
    char msg[160];
    std::snprintf(msg, sizeof msg, "%s: quadrature failed (%s), value=%.6g abserr=%.3g",
                  who, gsl_strerror(status), value, abserr);
    throw NumericsError(msg);
}

} // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    WorkspaceLease lease(static_cast<std::size_t>(spec.max_subdivisions));
    gsl_function gf;
    gf.function = &call_trampoline;
    gf.params = const_cast<Integrand*>(&f);

    double value = 0.0, abserr = 0.0;
    const int status = gsl_integration_qags(
        &gf, a, b, spec.abs_tol, spec.rel_tol,
        static_cast<std::size_t>(spec.max_subdivisions), lease.ws, &value, &abserr);
    return check(status, value, abserr, spec, "integrate");
}

QuadResult integrate_upper(const Integrand& f, double a, const QuadratureSpec& spec) {
    WorkspaceLease lease(static_cast<std::size_t>(spec.max_subdivisions));
    gsl_function gf;
    gf.function = &call_trampoline;
    gf.params = const_cast<Integrand*>(&f);

    double value = 0.0, abserr = 0.0;
    const int status = gsl_integration_qagiu(
        &gf, a, spec.abs_tol, spec.rel_tol,
        static_cast<std::size_t>(spec.max_subdivisions), lease.ws, &value, &abserr);
    return check(status, value, abserr, spec, "integrate_upper");
}

} // namespace levylab::quad
