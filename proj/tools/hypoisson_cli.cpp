// Batch verification driver: every experiment of the library exposed as a
// subcommand emitting a deterministic CSV (17 significant digits, '#' header
// comments carrying the config echo).  Exit codes: 0 pass, 1 tolerance
// failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypoisson/hypoisson.hpp"
#include "hypoisson/selftest.hpp"

namespace {

constexpr const char* kVersion = "hypoisson 0.1.0";

struct RunConfig {
    int n = 4;
    int p = 1;
    int q = 1;
    double mu_re = 1.5;
    double mu_im = 0.0;
    int quad_level = 24;
    double t_min = 0.0;
    double t_max = 6.0;
    int t_steps = 25;
    std::vector<double> r_values = {1.5, 2.0, 4.0};
    std::uint64_t seed = 12345;
    std::string out_path = "-";
    int oracle_grid = 64;
    double oracle_radius = 32.0;

    hypoisson::SpectralParams spectral() const {
        hypoisson::SpectralParams sp{n, p, q, hypoisson::cplx(mu_re, mu_im)};
        sp.validate();
        return sp;
    }

    std::vector<double> t_grid() const {
        std::vector<double> g;
        if (t_steps < 1) throw std::domain_error("t_steps must be >= 1");
        if (t_min < 0) throw std::domain_error("t_min must be >= 0");
        if (t_steps == 1) return {t_min};
        for (int i = 0; i < t_steps; ++i)
            g.push_back(t_min + (t_max - t_min) * i / (t_steps - 1));
        return g;
    }
};

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    cfg.n = j.value("n", cfg.n);
    cfg.p = j.value("p", cfg.p);
    cfg.q = j.value("q", cfg.q);
    cfg.mu_re = j.value("mu_re", cfg.mu_re);
    cfg.mu_im = j.value("mu_im", cfg.mu_im);
    cfg.quad_level = j.value("quad_level", cfg.quad_level);
    cfg.t_min = j.value("t_min", cfg.t_min);
    cfg.t_max = j.value("t_max", cfg.t_max);
    cfg.t_steps = j.value("t_steps", cfg.t_steps);
    if (j.contains("r_values")) cfg.r_values = j["r_values"].get<std::vector<double>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.out_path = j.value("out_path", cfg.out_path);
    cfg.oracle_grid = j.value("oracle_grid", cfg.oracle_grid);
    cfg.oracle_radius = j.value("oracle_radius", cfg.oracle_radius);
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }

    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

    void comment(const std::string& s) { out() << "# " << s << "\n"; }

    void config_echo(const RunConfig& c, const std::string& command) {
        comment(kVersion);
        comment("command=" + command);
        std::ostringstream os;
        os << "n=" << c.n << " p=" << c.p << " q=" << c.q << " mu_re=" << num(c.mu_re)
           << " mu_im=" << num(c.mu_im) << " quad_level=" << c.quad_level
           << " t_min=" << num(c.t_min) << " t_max=" << num(c.t_max)
           << " t_steps=" << c.t_steps << " seed=" << c.seed;
        comment(os.str());
    }

    void header(const std::vector<std::string>& cols) {
        std::ostream& o = out();
        for (std::size_t i = 0; i < cols.size(); ++i)
            o << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    }

    void row(const std::vector<std::string>& cells) { header(cells); }

    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }

    static std::string num(int v) { return std::to_string(v); }

private:
    std::ofstream file_;
};

using namespace hypoisson;

std::vector<RMat> sample_rotations(const RunConfig& cfg, int count) {
    Rng rng(cfg.seed);
    std::vector<RMat> ks;
    for (int i = 0; i < count; ++i) ks.push_back(random_rotation(cfg.n, rng));
    return ks;
}

BoundaryForm seeded_test_form(const RunConfig& cfg) {
    Rng rng(cfg.seed ^ 0xf00d);
    PForm w(cfg.n, cfg.p);
    for (auto& c : w.c) c = rng.cgaussian();
    return kfinite_test_form(w, cfg.q);
}

int cmd_cfun(const RunConfig& cfg) {
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "cfun");
    csv.header({"mu_re", "mu_im", "c_scalar_re", "c_scalar_im", "c_qminus_re", "c_qminus_im",
                "c_q_re", "c_q_im", "oracle_err"});
    const double lo = std::max(0.25, cfg.mu_re - 1.0);
    const double hi = cfg.mu_re + 1.0;
    for (int i = 0; i < 9; ++i) {
        const double re = lo + (hi - lo) * i / 8.0;
        SpectralParams sp{cfg.n, cfg.p, cfg.q, cplx(re, cfg.mu_im)};
        const CFunctionValue v = c_function(sp);
        std::string oracle_err;
        if (cfg.n <= 4 && re > 0.0) {
            const OracleResult res = c_integral_oracle(sp, cfg.oracle_radius, cfg.oracle_grid);
            const double scale = std::max(1e-12, frobenius(v.matrix));
            oracle_err = CsvWriter::num(frobenius(res.matrix - v.matrix) / scale);
        }
        csv.row({CsvWriter::num(re), CsvWriter::num(cfg.mu_im), CsvWriter::num(v.c_scalar.real()),
                 CsvWriter::num(v.c_scalar.imag()), CsvWriter::num(v.c_qminus.real()),
                 CsvWriter::num(v.c_qminus.imag()), CsvWriter::num(v.c_q.real()),
                 CsvWriter::num(v.c_q.imag()), oracle_err});
    }
    return 0;
}

int cmd_eisenstein(const RunConfig& cfg) {
    const SpectralParams sp = cfg.spectral();
    const SphereQuadrature quad = build_sphere_quadrature(cfg.n, cfg.quad_level);
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "eisenstein");
    csv.header({"t", "fqm_closed_re", "fqm_closed_im", "fq_closed_re", "fq_closed_im",
                "fqm_quad_re", "fq_quad_re", "component_diff", "schur_residual"});
    for (double t : cfg.t_grid()) {
        const ScalarComponents closed = eisenstein_closed(sp, t);
        const ScalarComponents sq = scalar_components(eisenstein_quad(sp, t, quad), cfg.n, cfg.p);
        const double diff =
            std::max(std::abs(closed.f_q - sq.f_q), std::abs(closed.f_qminus - sq.f_qminus));
        csv.row({CsvWriter::num(t), CsvWriter::num(closed.f_qminus.real()),
                 CsvWriter::num(closed.f_qminus.imag()), CsvWriter::num(closed.f_q.real()),
                 CsvWriter::num(closed.f_q.imag()), CsvWriter::num(sq.f_qminus.real()),
                 CsvWriter::num(sq.f_q.real()), CsvWriter::num(diff),
                 CsvWriter::num(sq.schur_residual)});
    }
    return 0;
}

int cmd_fatou(const RunConfig& cfg) {
    const SpectralParams sp = cfg.spectral();
    const SphereQuadrature quad = build_sphere_quadrature(cfg.n, cfg.quad_level);
    const PoissonField field = make_poisson_field(sp, seeded_test_form(cfg), quad);
    const auto samples = sample_rotations(cfg, 8);
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "fatou");
    csv.header({"t", "k_id", "residual"});
    for (double t : cfg.t_grid())
        for (std::size_t i = 0; i < samples.size(); ++i)
            csv.row({CsvWriter::num(t), CsvWriter::num(static_cast<int>(i)),
                     CsvWriter::num(fatou_residual(field, samples[i], t))});
    return 0;
}

int cmd_eigencheck(const RunConfig& cfg) {
    const SpectralParams sp = cfg.spectral();
    const SphereQuadrature quad = build_sphere_quadrature(cfg.n, 8);
    const PoissonField field = make_poisson_field(sp, seeded_test_form(cfg), quad);
    FieldFn fn = [&field](const GroupElement& g) {
        return field_eval(field, g, EvalMode::ClosedForm);
    };
    Rng rng(cfg.seed ^ 0xabcd);
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "eigencheck");
    csv.header({"point_id", "op", "residual_rel"});
    const cplx mu = sp.mu;
    const double rq = sp.rho() - sp.q;
    const cplx cas_ev = -(-mu * mu + rq * rq);
    const cplx dd_ev = -mu * mu + rq * rq;
    for (int pt = 0; pt < 8; ++pt) {
        const GroupElement g = embed_K(random_rotation(cfg.n, rng)) *
                               geodesic(cfg.n, rng.uniform(0.4, 1.2)) *
                               embed_K(random_rotation(cfg.n, rng));
        const PForm base = fn(g);
        const double bn = norm2(base);
        const PForm killed = (sp.q == sp.p) ? apply_Dstar(fn, g) : apply_D(fn, g);
        csv.row({CsvWriter::num(pt), sp.q == sp.p ? "dstar" : "d",
                 CsvWriter::num(norm2(killed) / bn)});
        const PForm cas = apply_casimir(fn, g);
        csv.row({CsvWriter::num(pt), "casimir",
                 CsvWriter::num(norm2(cas - cas_ev * base) / (std::abs(cas_ev) * bn))});
        const auto pr = second_order_pair(fn, g);
        const PForm& eig = sp.q == sp.p ? pr.second : pr.first;
        const PForm& nul = sp.q == sp.p ? pr.first : pr.second;
        csv.row({CsvWriter::num(pt), sp.q == sp.p ? "dstar_d" : "d_dstar",
                 CsvWriter::num(norm2(eig - dd_ev * base) / (std::abs(dd_ev) * bn))});
        csv.row({CsvWriter::num(pt), sp.q == sp.p ? "d_dstar" : "dstar_d",
                 CsvWriter::num(norm2(nul) / bn)});
    }
    return 0;
}

int cmd_hardy(const RunConfig& cfg) {
    const SpectralParams sp = cfg.spectral();
    const SphereQuadrature quad = build_sphere_quadrature(cfg.n, cfg.quad_level);
    const BoundaryForm f = seeded_test_form(cfg);
    const PoissonField field = make_poisson_field(sp, f, quad);
    const RVec tg = cfg.t_grid();
    const double gl = gamma_lambda(sp, tg);
    const double acq = std::abs(c_component(sp));
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "hardy");
    csv.header({"r", "f_norm", "hardy_norm", "lower_bound", "upper_bound", "lower_slack",
                "upper_slack", "gamma_lambda", "endpoint_limit"});
    int failures = 0;
    for (double r : cfg.r_values) {
        const double fn = lr_norm(f, r, quad);
        const double hn = hardy_norm(field, r, tg, quad);
        const double lower = sp.c_pq() * acq * fn;
        const double upper = sp.c_pq() * gl * fn;
        const double ls = hn - lower, us = upper - hn;
        if (ls < -1e-6 || us < -1e-6) ++failures;
        csv.row({CsvWriter::num(r), CsvWriter::num(fn), CsvWriter::num(hn),
                 CsvWriter::num(lower), CsvWriter::num(upper), CsvWriter::num(ls),
                 CsvWriter::num(us), CsvWriter::num(gl), CsvWriter::num(lower)});
    }
    return failures == 0 ? 0 : 1;
}

int cmd_invert(const RunConfig& cfg) {
    const SpectralParams sp = cfg.spectral();
    if (!sp.inversion_admissible())
        throw std::domain_error("inversion requires Re(mu) > 0 away from the excluded point");
    const SphereQuadrature quad = build_sphere_quadrature(cfg.n, cfg.quad_level);
    const BoundaryForm f = seeded_test_form(cfg);
    const PoissonField field = make_poisson_field(sp, f, quad);
    const InvertPlan plan = make_invert_plan(sp, cfg.t_max);
    const auto samples = sample_rotations(cfg, 8);
    CsvWriter csv(cfg.out_path);
    csv.config_echo(cfg, "invert");
    csv.header({"k_id", "t", "abs_err", "ref_norm", "rel_err"});
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const CVec got = invert_at(plan, field, samples[i]);
        const CVec ref = eval_on_K(f, samples[i]);
        const double err = norm2(got - ref);
        csv.row({CsvWriter::num(static_cast<int>(i)), CsvWriter::num(cfg.t_max),
                 CsvWriter::num(err), CsvWriter::num(norm2(ref)),
                 CsvWriter::num(err / norm2(ref))});
    }
    return 0;
}

int cmd_selftest(const RunConfig& cfg) {
    AcceptanceOptions opt;
    opt.seed = cfg.seed;
    int failures = 0;
    run_acceptance(opt, [&](const CriterionResult& r) {
        std::printf("[%s] %2d. %-42s metric=%.3e tol=%.1e  %s\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.metric, r.tolerance,
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    });
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - Poisson transforms for differential forms on hyperbolic space"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override its fields)");
    app.add_option("--n", cfg.n, "ambient dimension (2..6)");
    app.add_option("--p", cfg.p, "form degree on H^n");
    app.add_option("--q", cfg.q, "boundary form degree (p-1 or p)");
    app.add_option("--mu-re", cfg.mu_re, "Re(mu), mu = i*lambda");
    app.add_option("--mu-im", cfg.mu_im, "Im(mu)");
    app.add_option("--quad-level", cfg.quad_level, "sphere quadrature level");
    app.add_option("--t-min", cfg.t_min, "geodesic grid start");
    app.add_option("--t-max", cfg.t_max, "geodesic grid end");
    app.add_option("--t-steps", cfg.t_steps, "geodesic grid size");
    app.add_option("--r", cfg.r_values, "L^r exponents (repeatable)");
    app.add_option("--seed", cfg.seed, "random seed for test data");
    app.add_option("--out", cfg.out_path, "output CSV path ('-' for stdout)");
    app.add_option("--oracle-grid", cfg.oracle_grid, "per-axis points of the Nbar oracle");
    app.add_option("--oracle-radius", cfg.oracle_radius, "truncation radius of the Nbar oracle");

    auto* c_cfun = app.add_subcommand(
        "cfun", "c-function components over a Re(mu) sweep, with the Nbar-integral oracle "
                "column (CSV: mu, c_scalar, c_qminus, c_q, oracle_err)");
    auto* c_eis = app.add_subcommand(
        "eisenstein", "Eisenstein scalar components, closed form vs quadrature "
                      "(CSV: t, components, diff, schur_residual)");
    auto* c_fatou = app.add_subcommand(
        "fatou", "Fatou residuals along t at 8 sample points (CSV: t, k_id, residual)");
    auto* c_eig = app.add_subcommand(
        "eigencheck", "eigen-equation residuals for D/D*/Casimir at 8 random points "
                      "(CSV: point_id, op, residual_rel)");
    auto* c_hardy = app.add_subcommand(
        "hardy", "Hardy norms and two-sided bounds per r (CSV: r, norms, slacks); "
                 "exit 1 on negative slack");
    auto* c_inv = app.add_subcommand(
        "invert", "inversion g_t vs boundary data at t = t_max (CSV: k_id, errors)");
    auto* c_self = app.add_subcommand(
        "selftest", "run the full acceptance suite; exit 0 iff all criteria pass");

    for (auto* sub : {c_cfun, c_eis, c_fatou, c_eig, c_hardy, c_inv, c_self})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            // file values fill in whatever was not given on the command line
            RunConfig merged;
            load_config_file(merged, config_path);
            if (app.count("--n") == 0) cfg.n = merged.n;
            if (app.count("--p") == 0) cfg.p = merged.p;
            if (app.count("--q") == 0) cfg.q = merged.q;
            if (app.count("--mu-re") == 0) cfg.mu_re = merged.mu_re;
            if (app.count("--mu-im") == 0) cfg.mu_im = merged.mu_im;
            if (app.count("--quad-level") == 0) cfg.quad_level = merged.quad_level;
            if (app.count("--t-min") == 0) cfg.t_min = merged.t_min;
            if (app.count("--t-max") == 0) cfg.t_max = merged.t_max;
            if (app.count("--t-steps") == 0) cfg.t_steps = merged.t_steps;
            if (app.count("--r") == 0) cfg.r_values = merged.r_values;
            if (app.count("--seed") == 0) cfg.seed = merged.seed;
            if (app.count("--out") == 0) cfg.out_path = merged.out_path;
            if (app.count("--oracle-grid") == 0) cfg.oracle_grid = merged.oracle_grid;
            if (app.count("--oracle-radius") == 0) cfg.oracle_radius = merged.oracle_radius;
        }

        if (c_cfun->parsed()) return cmd_cfun(cfg);
        if (c_eis->parsed()) return cmd_eisenstein(cfg);
        if (c_fatou->parsed()) return cmd_fatou(cfg);
        if (c_eig->parsed()) return cmd_eigencheck(cfg);
        if (c_hardy->parsed()) return cmd_hardy(cfg);
        if (c_inv->parsed()) return cmd_invert(cfg);
        if (c_self->parsed()) return cmd_selftest(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
