#include "adpath/experiment.hpp"

#include "adpath/error.hpp"
#include "adpath/random.hpp"
#include "adpath/spectral.hpp"
#include "adpath/zero_tunneling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace adpath::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// ----------------------------------------------------------------- helpers ---

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

double number(const json& v, const std::string& what) {
    if (!v.is_number()) fail(what + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(what + " must be finite");
    return d;
}

double positive(const json& v, const std::string& what) {
    const double d = number(v, what);
    if (!(d > 0.0)) fail(what + " must be positive");
    return d;
}

std::uint64_t unsigned_integer(const json& v, const std::string& what) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    fail(what + " must be a non-negative integer");
}

void check_finite(const json& v, const std::string& where) {
    if (v.is_number_float() && !std::isfinite(v.get<double>())) fail(where + ": non-finite number");
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) check_finite(v[i], where + "[" + std::to_string(i) + "]");
    } else if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) check_finite(it.value(), where + "." + it.key());
    }
}

Matrix parse_matrix(const json& v, const std::string& what) {
    if (!v.is_array() || v.empty()) fail(what + " must be a non-empty array of [re, im] pairs");
    const auto count = static_cast<Eigen::Index>(v.size());
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(count))));
    if (n * n != count) fail(what + ": entry count is not a perfect square");
    Matrix m(n, n);
    for (Eigen::Index k = 0; k < count; ++k) {
        const json& e = v[static_cast<std::size_t>(k)];
        if (!e.is_array() || e.size() != 2) fail(what + ": entries must be [re, im]");
        m(k / n, k % n) = cplx(number(e[0], what), number(e[1], what));
    }
    return m;
}

RealMatrix parse_real_matrix(const json& v, const std::string& what) {
    if (!v.is_array() || v.empty()) fail(what + " must be a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(v.size());
    RealMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail(what + " must be square");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = number(row[static_cast<std::size_t>(j)], what);
    }
    return m;
}

std::string csv_row(std::initializer_list<double> values) {
    std::string out;
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_number(v);
        first = false;
    }
    out += '\n';
    return out;
}

void write_atomic(const fs::path& file, const std::string& content) {
    fs::create_directories(file.parent_path().empty() ? fs::path(".") : file.parent_path());
    fs::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, file);
}

void write_json(const fs::path& file, const json& j) { write_atomic(file, j.dump(2) + "\n"); }

// ---------------------------------------------------------- problem setup ---

struct Problem {
    std::optional<HamiltonianPath> path;
    std::optional<BlochPath> bloch;
    std::optional<double> grover_N;
    std::optional<DephasingModel> deph;
    std::optional<MassProfile> mass;
    std::vector<double> breakpoints;
};

BlochPath bloch_family(const json& p) {
    const std::string family = require(p, "family", "path").get<std::string>();
    const auto opt = [&](const char* key, double dflt) {
        return p.contains(key) ? number(p.at(key), std::string("path.") + key) : dflt;
    };
    if (family == "quarter_circle") return bloch::quarter_circle(opt("gap", 1.0));
    if (family == "rotating") return bloch::rotating(opt("angle", 1.0), opt("radius", 1.0));
    if (family == "fixed_z") return bloch::fixed_z();
    if (family == "linear_xz") return bloch::linear_xz();
    if (family == "dipped_arc") return bloch::dipped_arc(opt("depth", 0.5));
    fail("unknown Bloch family \"" + family + "\"");
}

void build_path(const json& cfg, Problem& pr) {
    const json& p = require(cfg, "path", "config");
    const std::string type = require(p, "type", "path").get<std::string>();
    if (type == "linear") {
        pr.path = linear_path(HermitianOperator(parse_matrix(require(p, "H0", "path"), "path.H0")),
                              HermitianOperator(parse_matrix(require(p, "H1", "path"), "path.H1")));
    } else if (type == "constant") {
        const HermitianOperator h(parse_matrix(require(p, "H", "path"), "path.H"));
        pr.path = HamiltonianPath(
            h.dim(), [m = h.matrix()](double) { return m; },
            [n = h.dim()](double) -> Matrix { return Matrix::Zero(n, n); }, PathVariant::Custom);
    } else if (type == "random_linear") {
        const auto dim = require(p, "dim", "path").get<int>();
        if (dim < 2 || dim > 16) fail("path.dim must be in [2, 16]");
        FixtureRng rng(unsigned_integer(cfg.at("seed"), "seed"));
        const HermitianOperator h0 = random_hermitian(dim, rng);
        const HermitianOperator h1 = random_hermitian(dim, rng);
        pr.path = linear_path(h0, h1);
    } else if (type == "bloch") {
        pr.bloch = bloch_family(p);
        pr.path = pr.bloch->hamiltonian_path();
    } else if (type == "grover") {
        const double N = number(require(p, "N", "path"), "path.N");
        if (N < 2.0) fail("path.N must be >= 2");
        pr.grover_N = N;
        pr.bloch = grover::path(N);
        pr.path = pr.bloch->hamiltonian_path(PathVariant::Grover);
        pr.breakpoints = grover::breakpoints(N);
    } else {
        fail("unknown path type \"" + type + "\"");
    }
}

double path_min_gap(const Problem& pr) {
    if (pr.bloch) return pr.bloch->min_gap();
    double g0 = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 1000; ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(pr.path->H(i / 1000.0).matrix(), Eigen::EigenvaluesOnly);
        for (Eigen::Index a = 0; a + 1 < es.eigenvalues().size(); ++a) {
            g0 = std::min(g0, es.eigenvalues()(a + 1) - es.eigenvalues()(a));
        }
    }
    return g0;
}

void build_dephasing(const json& cfg, Problem& pr) {
    if (!cfg.contains("dephasing")) return;
    const json& d = cfg.at("dephasing");
    const std::string mode = require(d, "mode", "dephasing").get<std::string>();
    if (mode == "none") {
        pr.deph = DephasingModel::none(pr.path->dim());
    } else if (mode == "matrix") {
        RealMatrix g = parse_real_matrix(require(d, "gamma", "dephasing"), "dephasing.gamma");
        if (g.rows() != pr.path->dim()) fail("dephasing.gamma does not match the path dimension");
        pr.deph = DephasingModel::matrix(std::move(g));
    } else if (mode == "scalar") {
        double gamma = 0.0;
        if (d.contains("gamma")) {
            gamma = positive(d.at("gamma"), "dephasing.gamma");
        } else {
            const std::string rule = require(d, "rule", "dephasing").get<std::string>();
            if (rule == "g0") {
                const double c = d.contains("c") ? positive(d.at("c"), "dephasing.c") : 1.0;
                gamma = c * path_min_gap(pr);
            } else if (rule == "power_law") {
                if (!pr.grover_N) fail("dephasing rule power_law needs a grover path");
                gamma = grover::GammaRule::power_law(number(require(d, "alpha", "dephasing"), "dephasing.alpha"))
                            .gamma(*pr.grover_N);
            } else {
                fail("unknown dephasing rule \"" + rule + "\"");
            }
        }
        pr.deph = DephasingModel::scalar(gamma);
    } else {
        fail("unknown dephasing mode \"" + mode + "\"");
    }
}

void build_mass(const json& cfg, Problem& pr) {
    const std::size_t grid = cfg.value("mass_grid", std::size_t{1001});
    if (cfg.contains("mass")) {
        const json& m = cfg.at("mass");
        const std::string kind = require(m, "kind", "mass").get<std::string>();
        const double c = m.contains("value") ? positive(m.at("value"), "mass.value") : 1.0;
        if (kind == "constant") {
            pr.mass = mass_profile([c](double) { return c; }, grid);
        } else if (kind == "quadratic") {
            pr.mass = mass_profile([c](double q) { return c * q * q; }, grid);
        } else {
            fail("unknown mass kind \"" + kind + "\"");
        }
        return;
    }
    if (!pr.deph || pr.deph->mode() != DephasingModel::Mode::Scalar) return;
    const DephasingModel deph = *pr.deph;
    const RateFn gamma = [deph](double q) { return deph.rate(q); };
    if (pr.bloch) {
        pr.mass = mass_profile(*pr.bloch, gamma, grid, pr.breakpoints);
    } else {
        pr.mass = mass_profile(*pr.path, gamma, grid, pr.breakpoints);
    }
}

Problem build_problem(const json& cfg) {
    Problem pr;
    if (cfg.contains("path")) {
        build_path(cfg, pr);
        build_dephasing(cfg, pr);
    }
    build_mass(cfg, pr);
    return pr;
}

struct BuiltSchedule {
    Schedule schedule;
    std::optional<OptimalSchedule> optimal;
};

BuiltSchedule build_schedule(const json& cfg, const Problem& pr) {
    const json& s = cfg.at("schedule");
    const std::string type = require(s, "type", "schedule").get<std::string>();
    if (type == "uniform") return {uniform_schedule(), std::nullopt};
    if (type == "grid") {
        const json& q = require(s, "q", "schedule");
        if (!q.is_array()) fail("schedule.q must be an array");
        std::vector<double> values;
        for (const json& v : q) values.push_back(number(v, "schedule.q"));
        return {schedule_from_grid(values), std::nullopt};
    }
    if (type == "optimal") {
        if (!pr.mass) fail("optimal schedule needs scalar dephasing (or a synthetic mass)");
        OptimalSchedule opt = tau_and_schedule(*pr.mass);
        Schedule sch = opt.schedule;
        return {std::move(sch), std::move(opt)};
    }
    fail("unknown schedule type \"" + type + "\"");
}

EvolveConfig integrator_config(const json& cfg) {
    EvolveConfig ec;
    const json& i = cfg.at("integrator");
    ec.step_factor = positive(i.at("step_factor"), "integrator.step_factor");
    ec.rtol = positive(i.at("rtol"), "integrator.rtol");
    ec.max_steps = i.at("max_steps").get<std::size_t>();
    ec.samples = i.at("samples").get<std::size_t>();
    if (ec.samples < 2) fail("integrator.samples must be >= 2");
    return ec;
}

json warnings_json(const std::vector<std::string>& w) {
    json out = json::array();
    for (const auto& s : w) out.push_back(s);
    return out;
}

} // namespace

// ------------------------------------------------------------------ config ---

json load_config(const fs::path& file) {
    std::ifstream is(file);
    if (!is) fail("cannot open config " + file.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
}

json resolve_config(const std::string& command, const json& config, const RunOptions& opts) {
    if (!config.is_object()) fail("config must be a JSON object");
    json cfg = config;
    check_finite(cfg, "config");
    if (opts.seed) cfg["seed"] = *opts.seed;
    if (cfg.contains("seed")) cfg["seed"] = unsigned_integer(cfg.at("seed"), "seed");

    const bool randomized = cfg.contains("path") && cfg.at("path").is_object() &&
                            cfg.at("path").value("type", std::string{}) == "random_linear";
    if (randomized && !cfg.contains("seed")) fail("seed is mandatory for randomized fixtures");

    json integ = {{"step_factor", 0.5}, {"rtol", 1e-8}, {"max_steps", std::size_t{1} << 25}, {"samples", 201}};
    if (cfg.contains("integrator")) {
        if (!cfg.at("integrator").is_object()) fail("integrator must be an object");
        integ.update(cfg.at("integrator"));
    }
    cfg["integrator"] = integ;
    if (!cfg.contains("mass_grid")) cfg["mass_grid"] = 1001;
    if (!cfg.contains("schedule")) cfg["schedule"] = {{"type", command == "schedule" ? "optimal" : "uniform"}};

    if (command == "schedule") {
        if (!cfg.contains("mass") && !(cfg.contains("path") && cfg.contains("dephasing"))) {
            fail("schedule needs either \"mass\" or \"path\" + scalar \"dephasing\"");
        }
    } else if (command == "evolve") {
        require(cfg, "path", "config");
        positive(require(cfg, "epsilon", "config"), "epsilon");
        if (!cfg.contains("dephasing")) fail("evolve needs \"dephasing\" (use mode \"none\" for unitary)");
    } else if (command == "zerotunnel") {
        const json& p = require(cfg, "path", "config");
        const std::string type = p.value("type", std::string{});
        if (type != "bloch" && type != "grover") fail("zerotunnel needs a two-level bloch or grover path");
        positive(require(cfg, "epsilon", "config"), "epsilon");
        if (cfg.contains("dephasing") && cfg.at("dephasing").value("mode", std::string{}) != "none") {
            fail("zerotunnel is unitary: omit dephasing or use mode \"none\"");
        }
        json zt = {{"offset", 0.0}};
        if (cfg.contains("zerotunnel")) zt.update(cfg.at("zerotunnel"));
        cfg["zerotunnel"] = zt;
    } else if (command == "grover") {
        const json& g = require(cfg, "grover", "config");
        const json& ns = require(g, "N", "grover");
        if (!ns.is_array() || ns.size() < 4) fail("grover.N must list at least 4 sizes");
        require(g, "gamma_rule", "grover");
        if (!g.contains("exclude_smallest")) cfg["grover"]["exclude_smallest"] = 2;
    } else {
        fail("unknown command \"" + command + "\"");
    }
    return cfg;
}

// --------------------------------------------------------------- commands ---

json run_schedule(const json& config, const RunOptions& opts) {
    const json cfg = resolve_config("schedule", config, opts);
    const Problem pr = build_problem(cfg);
    if (!pr.mass) fail("schedule needs scalar dephasing (or a synthetic mass)");
    const OptimalSchedule opt = tau_and_schedule(*pr.mass);

    std::string csv = "q,M,s_of_q\n";
    const MonotoneCubic* inv = opt.schedule.interpolant();
    for (std::size_t i = 0; i < pr.mass->grid.size(); ++i) {
        const double q = pr.mass->grid[i];
        const double s = (opt.zero_mass || inv == nullptr) ? q : inv->value(q);
        csv += csv_row({q, pr.mass->values[i], s});
    }
    json summary = {{"command", "schedule"},
                    {"tau", opt.tau},
                    {"quadrature_error", opt.quadrature_error},
                    {"zero_mass", opt.zero_mass},
                    {"config", cfg}};
    write_atomic(opts.out_dir / "mass_profile.csv", csv);
    write_json(opts.out_dir / "schedule.json", summary);
    return summary;
}

json run_evolve(const json& config, const RunOptions& opts) {
    const json cfg = resolve_config("evolve", config, opts);
    const Problem pr = build_problem(cfg);
    const BuiltSchedule bs = build_schedule(cfg, pr);
    const double eps = cfg.at("epsilon").get<double>();
    const EvolveConfig ec = integrator_config(cfg);

    const SpectralFrame f0 = spectral_frame(pr.path->H(0.0), ec.gap_tol, 0.0);
    const Trajectory traj = evolve(*pr.path, bs.schedule, *pr.deph, eps, DensityMatrix(f0.P(0)), ec);
    const auto T = measured_tunneling(traj, *pr.path, ec.gap_tol);

    std::string csv = "s,q,T,trace_error,min_eig\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& smp = traj.samples[i];
        csv += csv_row({smp.s, smp.q, T[i].T, smp.rho.trace_error(), smp.rho.min_eigenvalue()});
    }

    json summary = {{"command", "evolve"}, {"T_final", T.back().T}, {"steps", traj.steps},
                    {"refinement_change", traj.refinement_change}};
    if (pr.mass) {
        const double predicted = predicted_tunneling(*pr.mass, bs.schedule, eps);
        const double tau = bs.optimal ? bs.optimal->tau : tau_and_schedule(*pr.mass).tau;
        const TunnelingReport rep = tunneling_report(predicted, T.back().T, eps, tau);
        summary["predicted"] = rep.predicted;
        summary["ratio_error"] = rep.ratio_error;
        summary["tau"] = rep.tau;
    } else {
        summary["predicted"] = nullptr;
        summary["ratio_error"] = nullptr;
    }
    summary["warnings"] = warnings_json(traj.warnings);
    summary["config"] = cfg;
    write_atomic(opts.out_dir / "trajectory.csv", csv);
    write_json(opts.out_dir / "evolve.json", summary);
    return summary;
}

json run_zerotunnel(const json& config, const RunOptions& opts) {
    const json cfg = resolve_config("zerotunnel", config, opts);
    const Problem pr = build_problem(cfg);
    if (cfg.at("schedule").value("type", std::string{}) == "optimal") {
        fail("zerotunnel base schedule must be uniform or grid");
    }
    const BuiltSchedule bs = build_schedule(cfg, pr);
    const double eps = cfg.at("epsilon").get<double>();
    ConstructOptions co;
    co.offset = number(cfg.at("zerotunnel").at("offset"), "zerotunnel.offset");
    const PiecewiseControl control = construct(*pr.bloch, bs.schedule, eps, co);
    const double fidelity = verify(control, *pr.bloch, InitialLevel::Ground);
    const double excited = verify(control, *pr.bloch, InitialLevel::Excited);
    const DeviationReport dev = deviation(control);

    std::string csv = "i,s_begin,s_end,q_minus,q_plus,q_star,axis_x,axis_y,axis_z,angle,duration,hold,skipped\n";
    for (std::size_t i = 0; i < control.segments.size(); ++i) {
        const ControlSegment& seg = control.segments[i];
        csv += std::to_string(i) + "," +
               csv_row({seg.s_begin, seg.s_end, seg.q_minus, seg.q_plus, seg.q_star, seg.axis(0), seg.axis(1),
                        seg.axis(2), seg.angle, seg.duration, seg.hold, seg.skipped ? 1.0 : 0.0});
    }
    json summary = {{"command", "zerotunnel"},
                    {"final_fidelity", fidelity},
                    {"T_final", 1.0 - fidelity},
                    {"excited_fidelity", excited},
                    {"deviation_bound", dev.bound},
                    {"deviation_actual", dev.actual},
                    {"interval_length", control.interval_length},
                    {"g0", control.g0},
                    {"segments", control.segments.size()},
                    {"total_fast_time", control.total_fast_time()},
                    {"total_time", 1.0 / eps},
                    {"overrun", control.overrun()},
                    {"warnings", warnings_json(control.warnings)},
                    {"config", cfg}};
    write_atomic(opts.out_dir / "segments.csv", csv);
    write_json(opts.out_dir / "zerotunnel.json", summary);
    return summary;
}

json run_grover(const json& config, const RunOptions& opts) {
    const json cfg = resolve_config("grover", config, opts);
    const json& g = cfg.at("grover");
    std::vector<std::uint64_t> Ns;
    for (const json& n : g.at("N")) {
        Ns.push_back(unsigned_integer(n, "grover.N entries"));
    }
    const json& r = g.at("gamma_rule");
    const std::string kind = require(r, "kind", "grover.gamma_rule").get<std::string>();
    grover::GammaRule rule;
    if (kind == "proportional_to_g0") {
        rule = grover::GammaRule::proportional_to_g0(r.contains("c") ? positive(r.at("c"), "gamma_rule.c") : 1.0);
    } else if (kind == "fixed") {
        rule = grover::GammaRule::fixed(positive(require(r, "gamma", "grover.gamma_rule"), "gamma_rule.gamma"));
    } else if (kind == "power_law") {
        rule = grover::GammaRule::power_law(number(require(r, "alpha", "grover.gamma_rule"), "gamma_rule.alpha"));
    } else {
        fail("unknown gamma rule \"" + kind + "\"");
    }
    const auto exclude = g.at("exclude_smallest").get<std::size_t>();
    const grover::ScalingResult res = grover::scaling_experiment(Ns, rule, exclude, opts.threads);

    std::string csv = "N,gamma,tau\n";
    for (const auto& row : res.rows) {
        csv += std::to_string(row.N) + "," + csv_row({row.gamma, row.tau});
    }
    json summary = {{"command", "grover"},
                    {"slope", res.fit.slope},
                    {"slope_stderr", res.fit.slope_stderr},
                    {"fit_window", {{"first_N", res.fit_first_N}, {"last_N", res.fit_last_N}, {"excluded_smallest", exclude}}},
                    {"gamma_rule", rule.describe()},
                    {"config", cfg}};
    write_atomic(opts.out_dir / "scaling.csv", csv);
    write_json(opts.out_dir / "grover.json", summary);
    return summary;
}

int run_command(const std::string& command, const fs::path& config_file, const RunOptions& opts, std::ostream& err) {
    try {
        const json cfg = load_config(config_file);
        json summary;
        if (command == "schedule") summary = run_schedule(cfg, opts);
        else if (command == "evolve") summary = run_evolve(cfg, opts);
        else if (command == "zerotunnel") summary = run_zerotunnel(cfg, opts);
        else if (command == "grover") summary = run_grover(cfg, opts);
        else fail("unknown command \"" + command + "\"");
        if (summary.contains("warnings")) {
            for (const auto& w : summary.at("warnings")) err << "warning: " << w.get<std::string>() << "\n";
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << (is_input_error(e.kind()) ? "config error: " : "numerical failure: ") << e.what() << "\n";
        return is_input_error(e.kind()) ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace adpath::cli
