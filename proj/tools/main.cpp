// Command-line driver: tabulates kernels and fundamental solutions, runs
// the two solvers, sweeps log-Sobolev residuals over the bundled corpus,
// traces hypercontractivity experiments and classifies kernel thresholds.
// Every artifact embeds the hash of its effective config, so identical
// configs give byte-identical files.
//
// Exit codes: 0 ok, 1 numerical failure, 2 usage error, 3 inconclusive
// classification.

#include "levylab/corpus.hpp"
#include "levylab/errors.hpp"
#include "levylab/functionals.hpp"
#include "levylab/fundamental_solution.hpp"
#include "levylab/grid.hpp"
#include "levylab/hyperlab.hpp"
#include "levylab/io.hpp"
#include "levylab/kernel_stepper.hpp"
#include "levylab/kernels.hpp"
#include "levylab/spectral_solver.hpp"
#include "levylab/symbols.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

using namespace levylab;
using nlohmann::json;

namespace {

const double pi = 3.14159265358979323846;

// ---------------------------------------------------------------- plumbing

int env_workers() {
    if (const char* env = std::getenv("LEVYLAB_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

// Indexed jobs pulled from an atomic counter; results land in caller-owned
// slots, so the assembled output does not depend on the worker count.
void run_jobs(std::size_t njobs, int workers, const std::function<void(std::size_t)>& job) {
    workers = std::max(1, std::min(workers, static_cast<int>(njobs)));
    if (workers == 1) {
        for (std::size_t i = 0; i < njobs; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mtx;
    std::exception_ptr err;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= njobs) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

void emit_text(const std::string& body, const std::string& out) {
    if (out.empty()) {
        std::fputs(body.c_str(), stdout);
    } else {
        io::write_text_atomic(out, body);
    }
}

void emit_csv(const io::CsvDoc& doc, const std::string& out) { emit_text(doc.render(), out); }

std::string short7(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

// -------------------------------------------------------------- configs

struct KernelCfg {
    std::string name = "log";
    int dim = 1;
    double sigma = 1.0;
    double rmin = 1e-4;
    double rmax = 30.0;
    int rows = 2048;
};

void to_json(json& j, const KernelCfg& c) {
    j = json{{"name", c.name}, {"dim", c.dim},   {"sigma", c.sigma},
             {"rmin", c.rmin}, {"rmax", c.rmax}, {"rows", c.rows}};
}
void from_json(const json& j, KernelCfg& c) {
    c.name = j.value("name", c.name);
    c.dim = j.value("dim", c.dim);
    c.sigma = j.value("sigma", c.sigma);
    c.rmin = j.value("rmin", c.rmin);
    c.rmax = j.value("rmax", c.rmax);
    c.rows = j.value("rows", c.rows);
}

struct FundsolCfg {
    int dim = 2;
    double t = 0.5;
    double rmin = 1e-5;
    double rmax = 50.0;
    int rows = 2048;
};

void to_json(json& j, const FundsolCfg& c) {
    j = json{{"dim", c.dim}, {"t", c.t}, {"rmin", c.rmin}, {"rmax", c.rmax}, {"rows", c.rows}};
}
void from_json(const json& j, FundsolCfg& c) {
    c.dim = j.value("dim", c.dim);
    c.t = j.value("t", c.t);
    c.rmin = j.value("rmin", c.rmin);
    c.rmax = j.value("rmax", c.rmax);
    c.rows = j.value("rows", c.rows);
}

struct SimulateCfg {
    std::string method = "spectral";  // spectral | stepper
    std::string name = "log";         // symbol/kernel pair
    double sigma = 1.0;
    int dim = 1;
    int n = 1024;
    double length = 40.0;
    std::string field = "gaussian";  // gaussian | plateau | band
    double width = 1.0;
    std::uint64_t seed = 1;
    double dt = 0.0;  // stepper only; 0 = auto
    std::vector<double> times = {0.1};
};

void to_json(json& j, const SimulateCfg& c) {
    j = json{{"method", c.method}, {"name", c.name},   {"sigma", c.sigma},
             {"dim", c.dim},       {"n", c.n},         {"length", c.length},
             {"field", c.field},   {"width", c.width}, {"seed", c.seed},
             {"dt", c.dt},         {"times", c.times}};
}
void from_json(const json& j, SimulateCfg& c) {
    c.method = j.value("method", c.method);
    c.name = j.value("name", c.name);
    c.sigma = j.value("sigma", c.sigma);
    c.dim = j.value("dim", c.dim);
    c.n = j.value("n", c.n);
    c.length = j.value("length", c.length);
    c.field = j.value("field", c.field);
    c.width = j.value("width", c.width);
    c.seed = j.value("seed", c.seed);
    c.dt = j.value("dt", c.dt);
    c.times = j.value("times", c.times);
}

struct HyperCfg {
    std::string symbol = "log";
    std::string family = "logIminusDelta";
    int dim = 1;
    double p = 2.0;
    double sigma = 1.0;
    int n = 4096;
    double length = 40.0;
    double width = 1.0;
    std::vector<double> times = {0.05, 0.1, 0.15, 0.2};
};

void to_json(json& j, const HyperCfg& c) {
    j = json{{"symbol", c.symbol}, {"family", c.family}, {"dim", c.dim},
             {"p", c.p},           {"sigma", c.sigma},   {"n", c.n},
             {"length", c.length}, {"width", c.width},   {"times", c.times}};
}
void from_json(const json& j, HyperCfg& c) {
    c.symbol = j.value("symbol", c.symbol);
    c.family = j.value("family", c.family);
    c.dim = j.value("dim", c.dim);
    c.p = j.value("p", c.p);
    c.sigma = j.value("sigma", c.sigma);
    c.n = j.value("n", c.n);
    c.length = j.value("length", c.length);
    c.width = j.value("width", c.width);
    c.times = j.value("times", c.times);
}

struct LogsobCfg {
    std::vector<double> p = {2.0, 3.0, 4.0};
    std::string family = "logIminusDelta";
    std::string corpus = "default";
    std::string form = "fourier";  // fourier | kernel
    int dim = 1;
    int n = 1024;
    double length = 40.0;
};

void to_json(json& j, const LogsobCfg& c) {
    j = json{{"p", c.p},     {"family", c.family}, {"corpus", c.corpus}, {"form", c.form},
             {"dim", c.dim}, {"n", c.n},           {"length", c.length}};
}
void from_json(const json& j, LogsobCfg& c) {
    c.p = j.value("p", c.p);
    c.family = j.value("family", c.family);
    c.corpus = j.value("corpus", c.corpus);
    c.form = j.value("form", c.form);
    c.dim = j.value("dim", c.dim);
    c.n = j.value("n", c.n);
    c.length = j.value("length", c.length);
}

struct ClassifyCfg {
    std::string name = "log";
    int dim = 1;
    double sigma = 1.0;
    int k_min = 4;
    int k_max = 24;
    int tail_window = 8;
    bool fourier = true;
};

void to_json(json& j, const ClassifyCfg& c) {
    j = json{{"name", c.name},   {"dim", c.dim},
             {"sigma", c.sigma}, {"k_min", c.k_min},
             {"k_max", c.k_max}, {"tail_window", c.tail_window},
             {"fourier", c.fourier}};
}
void from_json(const json& j, ClassifyCfg& c) {
    c.name = j.value("name", c.name);
    c.dim = j.value("dim", c.dim);
    c.sigma = j.value("sigma", c.sigma);
    c.k_min = j.value("k_min", c.k_min);
    c.k_max = j.value("k_max", c.k_max);
    c.tail_window = j.value("tail_window", c.tail_window);
    c.fourier = j.value("fourier", c.fourier);
}

struct Runtime {
    std::string output;       // empty = stdout
    std::string outdir;       // simulate snapshots
    std::string json_out;     // hyper metadata
    std::string dump_config;  // write effective config and stop
    int workers = 1;
};

// ----------------------------------------------------------- name lookup

ops::RadialKernel kernel_by_name(const std::string& name, int dim, double sigma) {
    if (dim < 1 || dim > 3) throw DomainError("kernel: dim must be 1, 2 or 3");
    if (name == "log") return ops::log_kernel(dim);
    if (name == "fractional") return ops::fractional_kernel(dim, sigma);
    if (name == "truncated") return ops::truncated_kernel(dim);
    if (name == "slow_log") return ops::slow_log_kernel(dim);
    if (name == "gaussian") return ops::gaussian_kernel(dim);
    throw DomainError("kernel: unknown name '" + name + "'");
}

ops::LevySymbol symbol_by_name(const std::string& name, int dim, double sigma) {
    if (name == "log") return ops::builtin_symbol("log_bessel", dim);
    if (name == "gaussian") return ops::builtin_symbol("zero_order_gaussian", dim);
    return ops::builtin_symbol(name, dim, sigma);
}

fn::LogSobFamily family_by_name(const std::string& name, int dim) {
    if (name == "logIminusDelta") return hyper::log_iminus_delta_family(dim);
    throw DomainError("family: unknown name '" + name + "'");
}

std::vector<std::string> base_comments(const std::string& cmd, const json& cfg) {
    const std::string dump = cfg.dump();
    return {
        "levylab " + cmd,
        "config " + dump,
        "config-hash " + io::hash_hex(io::fnv1a64(dump)),
    };
}

void check_grid(int dim, int n, double length) {
    if (dim < 1 || dim > 3) throw DomainError("grid: dim must be 1, 2 or 3");
    if (n < 8) throw DomainError("grid: n must be at least 8");
    if (!(length > 0.0)) throw DomainError("grid: length must be positive");
}

grid::ScalarField initial_field(const grid::TorusGrid& g, const std::string& kind,
                                double width, std::uint64_t seed) {
    if (!(width > 0.0)) throw DomainError("field: width must be positive");
    if (kind == "gaussian") return corpus::gaussian_bump(g, width);
    if (kind == "plateau") return corpus::smoothed_indicator(g, width, g.length / 64.0);
    if (kind == "band") return corpus::band_limited_field(g, seed);
    throw DomainError("field: unknown kind '" + kind + "'");
}

// ------------------------------------------------------------- commands

int cmd_kernel(const KernelCfg& cfg, const Runtime& rt) {
    if (cfg.rows < 2) throw DomainError("kernel: rows must be at least 2");
    if (!(cfg.rmin > 0.0) || !(cfg.rmax > cfg.rmin))
        throw DomainError("kernel: need 0 < rmin < rmax");
    const auto kernel = kernel_by_name(cfg.name, cfg.dim, cfg.sigma);

    io::CsvDoc doc;
    doc.comments = base_comments("kernel", json(cfg));
    if (cfg.name == "log") {
        // Closed-form limits: r^N J -> Gamma(N/2)/pi^{N/2} at 0 and
        // r^{(N+1)/2} e^r J -> (2 pi)^{-(N-1)/2} at infinity.
        const double small[] = {1.0, 1.0 / pi, 1.0 / (2.0 * pi)};
        const double large = std::pow(2.0 * pi, -0.5 * (cfg.dim - 1));
        doc.comments.push_back("small-r target: r^N * J -> " +
                               io::format_double(small[cfg.dim - 1]));
        doc.comments.push_back("large-r target: r^((N+1)/2) * e^r * J -> " +
                               io::format_double(large));
        doc.comments.push_back("tolerance: tabulated J within 1e-5 relative of the kernel");
    }
    doc.columns = {"r", "J", "r^N*J"};
    doc.rows.assign(static_cast<std::size_t>(cfg.rows), {});
    const double stretch = cfg.rmax / cfg.rmin;
    run_jobs(doc.rows.size(), rt.workers, [&](std::size_t i) {
        const double s = static_cast<double>(i) / (cfg.rows - 1);
        const double r = cfg.rmin * std::pow(stretch, s);
        const double j = kernel.density(r);
        doc.rows[i] = {r, j, std::pow(r, cfg.dim) * j};
    });
    emit_csv(doc, rt.output);
    return 0;
}

int cmd_fundsol(const FundsolCfg& cfg, const Runtime& rt) {
    if (cfg.dim < 1 || cfg.dim > 3) throw DomainError("fundsol: dim must be 1, 2 or 3");
    if (!(cfg.t > 0.0)) throw DomainError("fundsol: t must be positive");
    if (cfg.rows < 2 || !(cfg.rmin > 0.0) || !(cfg.rmax > cfg.rmin))
        throw DomainError("fundsol: malformed radial grid");

    fs::Profile prof;
    prof.r.resize(static_cast<std::size_t>(cfg.rows));
    prof.value.resize(prof.r.size());
    const double stretch = cfg.rmax / cfg.rmin;
    run_jobs(prof.r.size(), rt.workers, [&](std::size_t i) {
        const double s = static_cast<double>(i) / (cfg.rows - 1);
        prof.r[i] = cfg.rmin * std::pow(stretch, s);
        prof.value[i] = fs::bessel_density(prof.r[i], cfg.t, cfg.dim);
    });

    io::CsvDoc doc;
    doc.comments = base_comments("fundsol", json(cfg));
    const bool riesz_ok = cfg.t < 0.5 * cfg.dim;
    if (riesz_ok) {
        const double exact = fs::weak_norm(fs::PotentialFamily::bessel, cfg.t, cfg.dim);
        const double est = fs::weak_norm_estimate(prof, cfg.t, cfg.dim);
        doc.comments.push_back("weak-norm exact " + short7(exact) + " (" +
                               io::format_double(exact) + "), estimate " +
                               io::format_double(est));
        doc.comments.push_back("tolerance: estimate within 2% of exact on the default grid");
    } else {
        doc.comments.push_back("weak-norm undefined: requires t < dim/2");
    }
    doc.columns = {"r", "H_t", "R_t", "ratio"};
    doc.rows.reserve(prof.r.size());
    for (std::size_t i = 0; i < prof.r.size(); ++i) {
        const double riesz = riesz_ok ? fs::riesz_density(prof.r[i], cfg.t, cfg.dim)
                                      : std::numeric_limits<double>::quiet_NaN();
        doc.rows.push_back({prof.r[i], prof.value[i], riesz, prof.value[i] / riesz});
    }
    emit_csv(doc, rt.output);
    return 0;
}

int cmd_simulate(const SimulateCfg& cfg, const Runtime& rt) {
    check_grid(cfg.dim, cfg.n, cfg.length);
    if (cfg.times.empty()) throw DomainError("simulate: empty time schedule");
    for (double t : cfg.times)
        if (!std::isfinite(t) || t < 0.0) throw DomainError("simulate: times must be >= 0");
    if (cfg.method != "spectral" && cfg.method != "stepper")
        throw DomainError("simulate: method must be spectral or stepper");

    grid::TorusGrid g;
    g.dim = cfg.dim;
    g.n = cfg.n;
    g.length = cfg.length;
    const auto u0 = initial_field(g, cfg.field, cfg.width, cfg.seed);

    std::unique_ptr<stepper::KernelStepper> st;
    ops::LevySymbol sym;
    if (cfg.method == "stepper") {
        st = std::make_unique<stepper::KernelStepper>(
            g, kernel_by_name(cfg.name, cfg.dim, cfg.sigma));
    } else {
        sym = symbol_by_name(cfg.name, cfg.dim, cfg.sigma);
    }

    const json cfg_json(cfg);
    const auto comments = base_comments("simulate", cfg_json);
    if (!rt.outdir.empty()) std::filesystem::create_directories(rt.outdir);

    io::CsvDoc trace;
    trace.comments = comments;
    trace.comments.push_back("check: mass constant along the flow; Lp norms nonincreasing");
    trace.columns = {"t", "l1", "l2", "linf", "mass"};
    trace.rows.assign(cfg.times.size() + 1, {});
    auto stats = [](double t, const grid::ScalarField& u) {
        return std::vector<double>{t, grid::lp_norm(u, 1.0), grid::lp_norm(u, 2.0),
                                   grid::lp_norm(u, std::numeric_limits<double>::infinity()),
                                   grid::mass(u)};
    };
    trace.rows[0] = stats(0.0, u0);

    run_jobs(cfg.times.size(), rt.workers, [&](std::size_t i) {
        const double t = cfg.times[i];
        const grid::ScalarField u = st ? st->evolve(u0, t, cfg.dt)
                                       : spectral::evolve_spectral(sym, u0, t);
        trace.rows[i + 1] = stats(t, u);
        if (!rt.outdir.empty()) {
            char stem[32];
            std::snprintf(stem, sizeof stem, "snap-%02zu", i);
            const std::filesystem::path dir(rt.outdir);
            if (g.dim == 1) {
                auto snap_comments = comments;
                snap_comments.push_back("t " + io::format_double(t));
                io::write_field_csv(dir / (std::string(stem) + ".csv"), u, snap_comments);
            } else {
                io::write_field_binary(dir / (std::string(stem) + ".bin"), u);
            }
        }
    });
    emit_csv(trace, rt.output);
    return 0;
}

int cmd_hyper(const HyperCfg& cfg, const Runtime& rt) {
    check_grid(cfg.dim, cfg.n, cfg.length);
    if (cfg.times.empty()) throw DomainError("hyper: empty time schedule");
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        if (!std::isfinite(cfg.times[i]) || cfg.times[i] <= 0.0)
            throw DomainError("hyper: times must be positive");
        if (i > 0 && cfg.times[i] <= cfg.times[i - 1])
            throw DomainError("hyper: times must be strictly increasing");
    }

    grid::TorusGrid g;
    g.dim = cfg.dim;
    g.n = cfg.n;
    g.length = cfg.length;
    auto u0 = corpus::gaussian_bump(g, cfg.width);
    const double norm0 = grid::lp_norm(u0, cfg.p);
    for (auto& v : u0.data) v /= norm0;

    const auto sym = symbol_by_name(cfg.symbol, cfg.dim, cfg.sigma);
    const auto fam = family_by_name(cfg.family, cfg.dim);

    std::vector<hyper::HyperSample> samples(cfg.times.size());
    run_jobs(cfg.times.size(), rt.workers, [&](std::size_t i) {
        const auto tr = hyper::run_hyper_experiment(sym, u0, cfg.p, {cfg.times[i]}, fam);
        samples[i] = tr.samples.at(0);
    });

    const json cfg_json(cfg);
    io::CsvDoc doc;
    doc.comments = base_comments("hyper", cfg_json);
    doc.comments.push_back("symbol " + sym.name + ", p " + io::format_double(cfg.p));
    doc.comments.push_back("tolerance: ratio <= 1.05");
    doc.columns = {"t", "q", "norm", "bound", "ratio"};
    for (const auto& s : samples) doc.rows.push_back({s.t, s.q, s.norm, s.bound, s.ratio});
    emit_csv(doc, rt.output);

    if (!rt.json_out.empty()) {
        json meta;
        meta["command"] = "hyper";
        meta["config"] = cfg_json;
        meta["config-hash"] = io::hash_hex(io::fnv1a64(cfg_json.dump()));
        meta["symbol"] = sym.name;
        meta["grid"] = {{"dim", g.dim}, {"n", g.n}, {"length", g.length}};
        meta["p"] = cfg.p;
        json rows = json::array();
        for (const auto& s : samples) {
            rows.push_back({{"t", s.t},
                            {"q", s.q},
                            {"norm", s.norm},
                            {"bound", s.bound},
                            {"ratio", s.ratio}});
        }
        meta["samples"] = rows;
        emit_text(meta.dump(2) + "\n", rt.json_out);
    }
    return 0;
}

int cmd_logsob(const LogsobCfg& cfg, const Runtime& rt) {
    check_grid(cfg.dim, cfg.n, cfg.length);
    if (cfg.p.empty()) throw DomainError("logsob: empty p list");
    for (double p : cfg.p)
        if (!(p >= 2.0)) throw DomainError("logsob: the family needs p >= 2");
    if (cfg.corpus != "default") throw DomainError("logsob: unknown corpus '" + cfg.corpus + "'");

    grid::TorusGrid g;
    g.dim = cfg.dim;
    g.n = cfg.n;
    g.length = cfg.length;
    const auto fields = corpus::default_corpus(g);
    const auto fam = family_by_name(cfg.family, cfg.dim);

    fn::DirichletFormHandle form;
    if (cfg.form == "fourier") {
        form = fn::fourier_form(ops::builtin_symbol("log_bessel", cfg.dim));
    } else if (cfg.form == "kernel") {
        form = fn::kernel_form(ops::log_kernel(cfg.dim), g);
    } else {
        throw DomainError("logsob: form must be fourier or kernel");
    }

    const std::size_t np = cfg.p.size();
    struct Row {
        std::string id;
        double p, entropy, mass_term, energy, residual;
    };
    std::vector<Row> rows(fields.size() * np);
    run_jobs(rows.size(), rt.workers, [&](std::size_t idx) {
        const auto& nf = fields[idx / np];
        const double p = cfg.p[idx % np];
        const double massp = std::pow(grid::lp_norm(nf.field, p), p);
        const double ent = fn::entropy(nf.field, p);
        grid::ScalarField fp1 = nf.field;
        for (auto& v : fp1.data) {
            v = v == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(v), p - 1.0), v);
        }
        const double mass_term = fam.C(p) * massp;
        const double energy = fam.D(p) * form(fp1, nf.field);
        rows[idx] = {nf.id, p, ent, mass_term, energy, ent - mass_term - energy};
    });

    std::string body;
    for (const auto& c : base_comments("logsob", json(cfg))) body += "# " + c + "\n";
    body += "# corpus " + std::string(corpus::version) + " (" +
            std::to_string(fields.size()) + " fields)\n";
    body += "# residual = entropy - mass-term - energy; energy carries the D(p) factor\n";
    body += "# tolerance: residual <= 1e-3 * ||f||_p^p\n";
    body += "field-id,p,entropy,mass-term,energy,residual\n";
    for (const auto& r : rows) {
        body += r.id + ',' + io::format_double(r.p) + ',' + io::format_double(r.entropy) +
                ',' + io::format_double(r.mass_term) + ',' + io::format_double(r.energy) +
                ',' + io::format_double(r.residual) + '\n';
    }
    emit_text(body, rt.output);
    return 0;
}

const char* verdict_name(hyper::KernelClass v) {
    switch (v) {
        case hyper::KernelClass::ultracontractive: return "ultracontractive";
        case hyper::KernelClass::strong_hyper_eventual_ultra:
            return "strong_hyper_eventual_ultra";
        default: return "not_eventually_ultra";
    }
}

int cmd_classify(const ClassifyCfg& cfg, const Runtime& rt) {
    const auto kernel = kernel_by_name(cfg.name, cfg.dim, cfg.sigma);
    hyper::ClassifyOptions opt;
    opt.k_min = cfg.k_min;
    opt.k_max = cfg.k_max;
    opt.tail_window = cfg.tail_window;
    opt.fourier_probe = cfg.fourier;
    const auto ev = hyper::classify_kernel_threshold(kernel, opt);

    const json cfg_json(cfg);
    json out;
    out["command"] = "classify";
    out["config"] = cfg_json;
    out["config-hash"] = io::hash_hex(io::fnv1a64(cfg_json.dump()));
    out["kernel"] = kernel.name;
    out["verdict"] = verdict_name(ev.verdict);
    out["slope"] = ev.slope;
    out["rel_span"] = ev.rel_span;
    out["fourier_exponent_t1"] = ev.fourier_exponent_t1;
    out["fourier_exponent_t2"] = ev.fourier_exponent_t2;
    out["thresholds"] = {{"ultracontractive_slope", 0.05},
                         {"vanishing_slope", -0.02},
                         {"constant_rel_span", 0.02}};
    json probes = json::array();
    for (std::size_t i = 0; i < ev.r.size(); ++i)
        probes.push_back({{"r", ev.r[i]}, {"ell", ev.ell[i]}});
    out["probes"] = probes;
    emit_text(out.dump(2) + "\n", rt.output);
    return 0;
}

void add_common(CLI::App* sub, Runtime& rt, std::string& config_path) {
    sub->add_option("-o,--output", rt.output, "output file (default: stdout)");
    sub->add_option("--workers", rt.workers, "parallel job limit (default: LEVYLAB_WORKERS or 1)");
    sub->add_option("--config", config_path, "JSON config applied underneath explicit flags");
    sub->add_option("--dump-config", rt.dump_config,
                    "write the effective config as JSON and exit");
}

} // namespace

int main(int argc, char** argv) {
    KernelCfg kernel_cfg;
    FundsolCfg fundsol_cfg;
    SimulateCfg simulate_cfg;
    HyperCfg hyper_cfg;
    LogsobCfg logsob_cfg;
    ClassifyCfg classify_cfg;
    Runtime rt;
    rt.workers = env_workers();

    // The config file must be applied before CLI11 writes explicit flags on
    // top, so it is located by a pre-scan of argv. It is applied only to the
    // active subcommand's config: the schemas disagree on shared key names
    // (e.g. hyper's scalar p vs logsob's p list).
    std::string config_path;
    std::string subcmd;
    const char* known[] = {"kernel", "fundsol", "simulate", "hyper", "logsob", "classify"};
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
        else if (subcmd.empty()) {
            for (const char* name : known)
                if (a == name) subcmd = name;
        }
    }
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::fprintf(stderr, "error: cannot open config %s\n", config_path.c_str());
            return 2;
        }
        try {
            json doc = json::parse(in);
            if (subcmd == "kernel") doc.get_to(kernel_cfg);
            else if (subcmd == "fundsol") doc.get_to(fundsol_cfg);
            else if (subcmd == "simulate") doc.get_to(simulate_cfg);
            else if (subcmd == "hyper") doc.get_to(hyper_cfg);
            else if (subcmd == "logsob") doc.get_to(logsob_cfg);
            else if (subcmd == "classify") doc.get_to(classify_cfg);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: bad config %s: %s\n", config_path.c_str(), e.what());
            return 2;
        }
    }

    CLI::App app{"numerical laboratory for nonlocal diffusion driven by Levy operators"};
    app.require_subcommand(1);

    auto* k = app.add_subcommand("kernel", "tabulate a radial jump kernel");
    k->add_option("--name", kernel_cfg.name, "log | fractional | truncated | slow_log | gaussian");
    k->add_option("--dim", kernel_cfg.dim, "ambient dimension (1-3)");
    k->add_option("--sigma", kernel_cfg.sigma, "order of the fractional kernel");
    k->add_option("--rmin", kernel_cfg.rmin, "first radius");
    k->add_option("--rmax", kernel_cfg.rmax, "last radius");
    k->add_option("--rows", kernel_cfg.rows, "number of log-spaced radii");
    add_common(k, rt, config_path);

    auto* f = app.add_subcommand("fundsol", "tabulate fundamental-solution profiles");
    f->add_option("--dim", fundsol_cfg.dim, "ambient dimension (1-3)");
    f->add_option("--t", fundsol_cfg.t, "order t of the potential");
    f->add_option("--rmin", fundsol_cfg.rmin, "first radius");
    f->add_option("--rmax", fundsol_cfg.rmax, "last radius");
    f->add_option("--rows", fundsol_cfg.rows, "number of log-spaced radii");
    add_common(f, rt, config_path);

    auto* s = app.add_subcommand("simulate", "evolve an initial field and trace its norms");
    s->add_option("--method", simulate_cfg.method, "spectral | stepper");
    s->add_option("--name", simulate_cfg.name, "symbol/kernel name (log, fractional, ...)");
    s->add_option("--sigma", simulate_cfg.sigma, "order of the fractional pair");
    s->add_option("--dim", simulate_cfg.dim, "ambient dimension (1-3)");
    s->add_option("--n", simulate_cfg.n, "grid points per axis");
    s->add_option("--length", simulate_cfg.length, "torus side length");
    s->add_option("--field", simulate_cfg.field, "gaussian | plateau | band");
    s->add_option("--width", simulate_cfg.width, "field width/radius");
    s->add_option("--seed", simulate_cfg.seed, "seed for the band field");
    s->add_option("--dt", simulate_cfg.dt, "stepper time step (0 = auto)");
    s->add_option("--times", simulate_cfg.times, "snapshot times")->delimiter(',');
    s->add_option("--outdir", rt.outdir, "directory for field snapshots");
    add_common(s, rt, config_path);

    auto* h = app.add_subcommand("hyper", "trace a hypercontractivity experiment");
    h->add_option("--symbol", hyper_cfg.symbol, "log | fractional | laplacian | gaussian");
    h->add_option("--family", hyper_cfg.family, "log-Sobolev constant family");
    h->add_option("--dim", hyper_cfg.dim, "ambient dimension (1-3)");
    h->add_option("--p", hyper_cfg.p, "starting exponent");
    h->add_option("--sigma", hyper_cfg.sigma, "order of the fractional symbol");
    h->add_option("--n", hyper_cfg.n, "grid points per axis");
    h->add_option("--length", hyper_cfg.length, "torus side length");
    h->add_option("--width", hyper_cfg.width, "initial Gaussian width");
    h->add_option("--times", hyper_cfg.times, "sample times")->delimiter(',');
    h->add_option("--json", rt.json_out, "also write the trace as JSON metadata");
    add_common(h, rt, config_path);

    auto* l = app.add_subcommand("logsob", "sweep log-Sobolev residuals over a corpus");
    l->add_option("--p", logsob_cfg.p, "exponent list")->delimiter(',');
    l->add_option("--family", logsob_cfg.family, "log-Sobolev constant family");
    l->add_option("--corpus", logsob_cfg.corpus, "test-function corpus");
    l->add_option("--form", logsob_cfg.form, "fourier | kernel");
    l->add_option("--dim", logsob_cfg.dim, "ambient dimension (1-3)");
    l->add_option("--n", logsob_cfg.n, "grid points per axis");
    l->add_option("--length", logsob_cfg.length, "torus side length");
    add_common(l, rt, config_path);

    auto* c = app.add_subcommand("classify", "threshold trichotomy for a kernel profile");
    c->add_option("--name", classify_cfg.name, "log | fractional | truncated | slow_log | gaussian");
    c->add_option("--dim", classify_cfg.dim, "ambient dimension (1-3)");
    c->add_option("--sigma", classify_cfg.sigma, "order of the fractional kernel");
    c->add_option("--k-min", classify_cfg.k_min, "first dyadic probe 2^-k");
    c->add_option("--k-max", classify_cfg.k_max, "last dyadic probe 2^-k");
    c->add_option("--tail-window", classify_cfg.tail_window, "probes in the fitted tail");
    c->add_flag("--fourier,!--no-fourier", classify_cfg.fourier, "Fourier decay corroboration");
    add_common(c, rt, config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!rt.dump_config.empty()) {
            json dump;
            if (k->parsed()) dump = json(kernel_cfg);
            else if (f->parsed()) dump = json(fundsol_cfg);
            else if (s->parsed()) dump = json(simulate_cfg);
            else if (h->parsed()) dump = json(hyper_cfg);
            else if (l->parsed()) dump = json(logsob_cfg);
            else dump = json(classify_cfg);
            io::write_text_atomic(rt.dump_config, dump.dump(2) + "\n");
            return 0;
        }
        if (k->parsed()) return cmd_kernel(kernel_cfg, rt);
        if (f->parsed()) return cmd_fundsol(fundsol_cfg, rt);
        if (s->parsed()) return cmd_simulate(simulate_cfg, rt);
        if (h->parsed()) return cmd_hyper(hyper_cfg, rt);
        if (l->parsed()) return cmd_logsob(logsob_cfg, rt);
        if (c->parsed()) return cmd_classify(classify_cfg, rt);
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InconclusiveError& e) {
        std::fprintf(stderr, "inconclusive: %s\n", e.what());
        return 3;
    } catch (const NumericsError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return 1;
    }
}
