// fgap: batch front end for the bounds, dual witnesses, prime scans and explicit-formula checks.
//
// Exit status: 0 on success, 1 on configuration or I/O errors, 2 when a computed quantity fails
// the assertion the report is meant to certify.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "fgap/bounds.hpp"
#include "fgap/dual.hpp"
#include "fgap/errors.hpp"
#include "fgap/explicit_formula.hpp"
#include "fgap/families.hpp"
#include "fgap/parallel.hpp"
#include "fgap/primes.hpp"
#include "fgap/report.hpp"

using namespace fgap;
using nlohmann::json;

namespace {

struct Common {
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
    bool svg = false;
    std::uint64_t seed = 1;
    double tol = 0.0;  // 0: module defaults
    std::string zeros;
};

struct Outcome {
    json result;
    std::string csv;  // empty when the subcommand has no tabular form
    std::vector<PlotSeries> plot;
    std::string plot_title, plot_x = "x", plot_y;
    std::vector<std::string> failures;
};

QuadratureSpec quad_spec(const Common& c) {
    QuadratureSpec q;
    if (c.tol > 0.0) {
        q.abs_tol = c.tol;
        q.rel_tol = c.tol;
    }
    return q;
}

json tolerance_json(const Common& c) {
    const QuadratureSpec q = quad_spec(c);
    return {{"quadrature_abs_tol", q.abs_tol}, {"quadrature_rel_tol", q.rel_tol}};
}

std::vector<Penalty> parse_A_list(const std::string& text) {
    std::vector<Penalty> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Penalty::parse(item));
    if (out.empty()) throw DomainError("--A: empty list");
    return out;
}

// Decimal or "p/q".
double parse_real(const std::string& text) {
    auto number = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != t.size() || !std::isfinite(v)) throw DomainError("cannot parse number '" + text + "'");
        return v;
    };
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const double den = number(text.substr(slash + 1));
        if (den == 0.0) throw DomainError("zero denominator in '" + text + "'");
        return number(text.substr(0, slash)) / den;
    }
    return number(text);
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string A = "inf,1,2,2.6,3,4,5,10";
    std::string target = "C";
};

Outcome run_bounds(const BoundsArgs& a, const Common& c) {
    Outcome o;
    const auto rows = bounds_table(parse_A_list(a.A), parse_target(a.target), quad_spec(c));
    o.result = json::array();
    PlotSeries lo{"lower", {}}, up{"upper", {}};
    for (const auto& r : rows) {
        o.result.push_back(to_json(r));
        if (r.lower > r.upper + 1e-12) o.failures.push_back("lower bound exceeds upper bound at A = " + r.A.str());
        if (!r.A.is_infinite()) {
            lo.points.emplace_back(r.A.value(), r.lower);
            up.points.emplace_back(r.A.value(), r.upper);
        }
    }
    o.csv = bounds_csv(rows);
    o.plot = {lo, up};
    o.plot_title = std::string("bounds for ") + a.target;
    o.plot_x = "A";
    return o;
}

// ---------------------------------------------------------------------------

struct OptimizeArgs {
    std::string A = "36/11";
    std::string target = "Cplus";
    std::string init;
    int max_evaluations = 3000;
    int restarts = 5;
};

Outcome run_optimize(const OptimizeArgs& a, const Common& c) {
    Outcome o;
    const Penalty A = Penalty::parse(a.A);
    const Mode mode = parse_target(a.target) == Target::C ? Mode::J : Mode::Jplus;
    const GaussianMixture init = a.init.empty() ? reference_mixture() : load_mixture_file(a.init);
    OptimizerConfig cfg;
    cfg.seed = c.seed;
    cfg.max_evaluations = a.max_evaluations;
    cfg.restarts = a.restarts;
    const auto r = optimize_mixture(A, mode, init, cfg, quad_spec(c));
    o.result = {{"A", A.str()},
                {"mode", to_string(mode)},
                {"initial_value", r.initial_value},
                {"value", r.report.functional_value},
                {"improved", r.improved},
                {"budget_exhausted", r.budget_exhausted},
                {"evaluations", r.evaluations},
                {"restart_values", r.restart_values},
                {"mixture", to_json(r.mixture)},
                {"report", to_json(r.report)}};
    if (r.report.functional_value < r.initial_value) o.failures.push_back("optimizer degraded the starting mixture");
    std::ostringstream csv;
    csv << "A,mode,initial_value,value,improved,evaluations\n"
        << A.str() << ',' << to_string(mode) << ',' << format_double(r.initial_value) << ','
        << format_double(r.report.functional_value) << ',' << (r.improved ? "true" : "false") << ',' << r.evaluations
        << '\n';
    o.csv = csv.str();
    const FourierPair f0 = make_gaussian_mixture(init), f1 = make_gaussian_mixture(r.mixture);
    PlotSeries s0{"initial", {}}, s1{"optimized", {}};
    for (int i = 0; i <= 400; ++i) {
        const double x = -2.0 + 4.0 * i / 400.0;
        s0.points.emplace_back(x, f0.eval_f(x));
        s1.points.emplace_back(x, f1.eval_f(x));
    }
    o.plot = {s0, s1};
    o.plot_title = "Gaussian mixture F";
    return o;
}

// ---------------------------------------------------------------------------

struct DualArgs {
    std::string witness = "psi";
    std::string A = "5";
    std::string target = "C";
    int n_max = 2000;
    double atom_bound = 0.0;  // 0: built-in constant for the target
};

Outcome run_dual(const DualArgs& a, const Common&) {
    Outcome o;
    DualWitness w;
    json checks = json::object();
    if (a.witness == "psi") {
        w = build_psi_default(a.n_max);
        const double d0 = gorbachev_d0();
        const bool ok = std::abs(w.sup_norm.value - d0) <= 1e-3;
        checks["sup_matches_d0"] = ok;
        checks["d0"] = d0;
        checks["sup_tolerance"] = 1e-3;
        if (!ok) o.failures.push_back("certified sup of psi differs from d0");
        o.result["coefficients"] = to_json(fourier_coeffs(gorbachev_profile(), a.n_max));
    } else if (a.witness == "psi-example") {
        w = build_psi_example();
        const bool ok = w.sup_norm.value < kPsiExampleBound;
        checks["sup_below_bound"] = ok;
        checks["bound"] = kPsiExampleBound;
        if (!ok) o.failures.push_back("certified sup of the Psi example is not below 1.2");
    } else if (a.witness == "tilde") {
        w = build_tilde_psi();
        const TildeA0 t = tilde_psi_a0();
        const bool ok = std::abs(w.sup_norm.value - t.value) <= 1e-3;
        checks["a0"] = t.value;
        checks["a0_error_bound"] = t.error_bound;
        checks["sup_matches_a0"] = ok;
        if (!ok) o.failures.push_back("certified sup of tilde psi differs from its a0");
    } else if (a.witness == "mollified") {
        const Target tg = parse_target(a.target);
        const DualWitness base = tg == Target::C ? build_psi_default(a.n_max) : build_psi_example();
        const MollifiedWitness m = mollify(base, Penalty::parse(a.A), tg, a.atom_bound);
        checks["transform_in_range"] = m.transform_in_range;
        checks["atoms_within_bound"] = m.atoms_within_bound;
        if (!m.transform_in_range) o.failures.push_back("mollified transform leaves the admissible range");
        o.result["mollified"] = to_json(m);
        w = m.witness;
    } else {
        throw DomainError("--witness must be one of psi, psi-example, tilde, mollified");
    }
    o.result["witness"] = to_json(w);
    o.result["checks"] = checks;
    const double range = std::min(6.0, std::max(2.0, w.sup_norm.range));
    PlotSeries s{w.name, {}};
    std::ostringstream csv;
    csv << "x,value\n";
    for (int i = 0; i <= 1200; ++i) {
        const double x = range * i / 1200.0;
        s.points.emplace_back(x, w(x));
        csv << format_double(x) << ',' << format_double(w(x)) << '\n';
    }
    o.csv = csv.str();
    o.plot = {s};
    o.plot_title = w.name;
    return o;
}

// ---------------------------------------------------------------------------

struct PrimesArgs {
    double max_ratio = 1e8;
    std::string checkpoint;
    int verify_count = 0;
    double verify_max = 1e9;
    std::string c = "22/25";
    int window_samples = 40;
};

Outcome run_primes(const PrimesArgs& a, const Common& cm) {
    Outcome o;
    if (!(a.max_ratio >= 5.0 && a.max_ratio < 1e13)) throw DomainError("--max-ratio must lie in [5, 1e13)");
    const u64 N = static_cast<u64>(a.max_ratio);
    GapScanState state;
    GapScanOptions opt;
    opt.threads = cm.threads;
    if (!a.checkpoint.empty()) {
        if (std::filesystem::exists(a.checkpoint)) {
            std::ifstream in(a.checkpoint);
            state = gap_state_from_json(json::parse(in));
            std::cerr << "resuming from " << a.checkpoint << " at " << state.next_lo << '\n';
        }
        opt.checkpoint_every = 64;
        opt.checkpoint = [&](const GapScanState& s) { atomic_write(a.checkpoint, to_json(s).dump(2) + "\n"); };
    }
    state = scan_gaps(N, state, opt);
    if (!a.checkpoint.empty()) atomic_write(a.checkpoint, to_json(state).dump(2) + "\n");

    const double c = parse_real(a.c);
    o.result["N"] = N;
    o.result["scan"] = to_json(state);
    o.result["cramer_threshold"] = c;
    if (!(state.max_cramer.cramer_ratio < c)) o.failures.push_back("Cramér ratio reaches the threshold");
    if (state.log_sq_violations != 0) o.failures.push_back("gap >= (log p)^2 for some p >= 11");

    if (a.verify_count > 0) {
        std::mt19937_64 rng(cm.seed);
        std::uniform_real_distribution<double> dist(4.0, a.verify_max);
        int found = 0;
        json misses = json::array();
        for (int i = 0; i < a.verify_count; ++i) {
            const double x = dist(rng);
            const IntervalCheck ic = verify_interval(x, c);
            if (ic.found)
                ++found;
            else
                misses.push_back(x);
        }
        o.result["verify"] = {{"count", a.verify_count}, {"found", found}, {"max_x", a.verify_max}, {"misses", misses}};
        if (found != a.verify_count) o.failures.push_back("an interval [x, x + c sqrt x log x] without primes");
    }
    o.csv = gap_csv({state.max_cramer, state.max_gap, state.max_log_sq});

    if (N >= 20000) {
        const auto rows = bt_ratio_scan(1e4, static_cast<double>(N), a.window_samples);
        PlotSeries s{"(pi(x+sqrt x)-pi(x)) log x / sqrt x", {}};
        for (const auto& r : rows) s.points.emplace_back(std::log10(r.x), r.normalized);
        o.plot = {s};
        o.plot_title = "normalized prime counts in sqrt windows";
        o.plot_x = "log10 x";
    }
    return o;
}

// ---------------------------------------------------------------------------

struct ExplicitArgs {
    double a = 1000.0;
    std::string theta = "5pi";
    std::size_t max_zeros = 0;
    int heights = 20;
};

double parse_theta(const std::string& s) {
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "pi") == 0) return parse_real(s.substr(0, s.size() - 2)) * std::numbers::pi;
    return parse_real(s);
}

Outcome run_explicit(const ExplicitArgs& a, const Common& c) {
    Outcome o;
    const std::string path = resolve_zero_path(c.zeros);
    if (path.empty()) throw Error("no zero table: pass --zeros or set FOURIER_GAP_ZEROS");
    const ZetaZeroTable t = load_zeros(path);
    const FormulaEvaluation r = explicit_formula_eval(t, a.a, parse_theta(a.theta), a.max_zeros, c.threads);
    o.result["table"] = {{"source", t.source}, {"size", t.size()}, {"max_height", t.max_height}};
    o.result["explicit_formula"] = to_json(r);
    if (!r.within_tail) o.failures.push_back("|residual| exceeds the truncation tail estimate");

    json counts = json::array();
    counts.push_back(to_json(zero_count_check(t, std::min(100.0, t.max_height))));
    for (int i = 1; i <= a.heights; ++i) {
        const double x = std::min(t.max_height, std::exp(std::log(10.0) + (std::log(t.max_height) - std::log(10.0)) * i / a.heights));
        const auto cc = zero_count_check(t, x);
        if (!cc.pass) o.failures.push_back("zero count outside the band at x = " + format_double(x));
        counts.push_back(to_json(cc));
    }
    o.result["zero_counts"] = counts;

    std::ostringstream csv;
    csv << "a,theta,delta,lhs,main_term,zero_sum,trivial_sum,truncation_height,zeros_used,residual,tail_estimate\n";
    csv << format_double(r.a) << ',' << format_double(r.theta) << ',' << format_double(r.delta) << ','
        << format_double(r.lhs) << ',' << format_double(r.main_term) << ',' << format_double(r.zero_sum) << ','
        << format_double(r.trivial_sum) << ',' << format_double(r.truncation_height) << ',' << r.zeros_used << ','
        << format_double(r.residual) << ',' << format_double(r.tail_estimate) << '\n';
    o.csv = csv.str();

    PlotSeries s{"log10 |residual|", {}}, e{"log10 tail estimate", {}};
    const std::size_t used = r.zeros_used;
    for (int i = 1; i <= 40; ++i) {
        const std::size_t k = std::max<std::size_t>(1, used * i / 40);
        const auto ri = explicit_formula_eval(t, r.a, r.theta, k, c.threads);
        s.points.emplace_back(ri.truncation_height, std::log10(std::max(std::abs(ri.residual), 1e-300)));
        e.points.emplace_back(ri.truncation_height, std::log10(ri.tail_estimate));
    }
    o.plot = {s, e};
    o.plot_title = "explicit formula residual against truncation height";
    o.plot_x = "T";
    return o;
}

// ---------------------------------------------------------------------------

struct AuditArgs {
    double lambda = 0.9;
    double x = 1e6;
    std::string c = "22/25";
};

Outcome run_audit(const AuditArgs& a, const Common&) {
    Outcome o;
    const AuditReport au = audit_zero_sum_constants(a.lambda);
    const EdgeReport ed = edge_value_check(a.lambda);
    const WindowParameters w = window_parameters(a.x, parse_real(a.c));
    const PrimePowerTail pt = prime_power_tail(w.a, w.delta);
    json terms = json::array();
    for (const auto& p : pt.terms) terms.push_back({{"n", p.n}, {"p", p.p}, {"k", p.k}});
    o.result["zero_sum_constants"] = to_json(au);
    o.result["edge_value"] = to_json(ed);
    o.result["prime_power_tail"] = {{"x", a.x},
                                    {"c", w.c},
                                    {"a", w.a},
                                    {"delta", w.delta},
                                    {"window_lo", pt.lo},
                                    {"window_hi", pt.hi},
                                    {"value", pt.value},
                                    {"terms", terms},
                                    {"counting_bound", pt.counting_bound},
                                    {"closed_bound", pt.closed_bound},
                                    {"closed_bound_at_4e18", closed_prime_power_bound(window_parameters(4e18, w.c).a)}};
    if (!au.pass) o.failures.push_back("assembled zero-sum constant is not below 0.070");
    if (!ed.edge_pass) o.failures.push_back("8 Fhat(1) exceeds 0.885");
    if (!ed.assembled_pass) o.failures.push_back("covering constant exceeds 0.886");
    if (!(pt.value <= pt.counting_bound && pt.counting_bound <= pt.closed_bound))
        o.failures.push_back("prime-power tail exceeds its bounds");

    std::ostringstream csv;
    csv << "quantity,value\n";
    auto row = [&](const char* k, double v) { csv << k << ',' << format_double(v) << '\n'; };
    row("l1_f", au.l1_f);
    row("l1_log_f", au.l1_log_f);
    row("l1_fprime", au.l1_fprime);
    row("l1_log_fprime", au.l1_log_fprime);
    row("assembled", au.assembled);
    row("eight_fhat_one", ed.eight_fhat_one);
    row("covering_assembled", ed.assembled);
    row("sqrt_a_delta_sq", ed.sqrt_a_delta_sq);
    row("prime_power_tail", pt.value);
    row("prime_power_counting_bound", pt.counting_bound);
    row("prime_power_closed_bound", pt.closed_bound);
    o.csv = csv.str();

    const double lam = a.lambda;
    PlotSeries f{"F(x) = H(x/lambda)", {}};
    for (int i = 0; i <= 800; ++i) {
        const double x = -4.0 + 8.0 * i / 800.0;
        f.points.emplace_back(x, cosine_kernel(x / lam));
    }
    o.plot = {f};
    o.plot_title = "F = H(x/" + format_double(lam) + ")";
    return o;
}

void emit(const std::string& command, const Outcome& o, const Common& c, const json& config) {
    std::string text;
    if (c.format == "csv" && !o.csv.empty()) {
        const json tol = tolerance_json(c);
        text = "# fgap " + command + " quadrature_abs_tol=" + format_double(tol["quadrature_abs_tol"].get<double>()) +
               " quadrature_rel_tol=" + format_double(tol["quadrature_rel_tol"].get<double>()) + "\n" + o.csv;
    } else {
        json doc = {{"command", command},
                    {"config", config},
                    {"tolerance", tolerance_json(c)},
                    {"result", o.result},
                    {"failures", o.failures},
                    {"status", o.failures.empty() ? "pass" : "fail"}};
        text = doc.dump(2) + "\n";
    }
    if (c.out.empty())
        std::cout << text;
    else
        atomic_write(c.out, text);
    if (c.svg && !o.plot.empty()) {
        const std::string svg_path = c.out.empty() ? "fgap_" + command + ".svg" : c.out + ".svg";
        atomic_write(svg_path, svg_line_plot(o.plot, o.plot_title, o.plot_x, o.plot_y));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier optimization and prime gap toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads (default: hardware count)");
    app.add_option("--out", common.out, "report path (default: stdout)");
    app.add_option("--format", common.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--svg", common.svg, "also write an SVG plot next to the report");
    app.add_option("--seed", common.seed, "random seed");
    app.add_option("--tol", common.tol, "quadrature tolerance (absolute and relative)")->check(CLI::PositiveNumber);
    app.add_option("--zeros", common.zeros, "zero table (fallback: FOURIER_GAP_ZEROS)");
    app.fallthrough();

    BoundsArgs bounds;
    auto* sb = app.add_subcommand("bounds", "lower and upper bounds for C(A) or C+(A)");
    sb->add_option("--A", bounds.A, "comma-separated penalties, inf allowed");
    sb->add_option("--target", bounds.target)->check(CLI::IsMember({"C", "Cplus"}));

    OptimizeArgs optimize;
    auto* so = app.add_subcommand("optimize", "Nelder-Mead search over Gaussian mixtures");
    so->add_option("--A", optimize.A);
    so->add_option("--target", optimize.target)->check(CLI::IsMember({"C", "Cplus"}));
    so->add_option("--init", optimize.init, "mixture file, one 'c m s' term per line");
    so->add_option("--max-evals", optimize.max_evaluations)->check(CLI::PositiveNumber);
    so->add_option("--restarts", optimize.restarts)->check(CLI::NonNegativeNumber);

    DualArgs dual;
    auto* sd = app.add_subcommand("dual", "dual witnesses and their certified sup norms");
    sd->add_option("--witness", dual.witness)->check(CLI::IsMember({"psi", "psi-example", "tilde", "mollified"}));
    sd->add_option("--A", dual.A, "penalty for the mollified witness");
    sd->add_option("--target", dual.target)->check(CLI::IsMember({"C", "Cplus"}));
    sd->add_option("--n-max", dual.n_max)->check(CLI::Range(10, 1000000));
    sd->add_option("--atom-bound", dual.atom_bound, "atom constant c for mollification (default: built-in constant)");

    PrimesArgs primes;
    auto* sp = app.add_subcommand("primes", "prime gap scan and interval verification");
    sp->add_option("--max-ratio", primes.max_ratio, "scan all primes up to N");
    sp->add_option("--checkpoint", primes.checkpoint, "resume file, rewritten during the scan");
    sp->add_option("--verify", primes.verify_count, "random intervals to verify")->check(CLI::NonNegativeNumber);
    sp->add_option("--verify-max", primes.verify_max);
    sp->add_option("--c", primes.c, "interval constant");
    sp->add_option("--window-samples", primes.window_samples)->check(CLI::Range(2, 100000));

    ExplicitArgs expl;
    auto* se = app.add_subcommand("explicit", "explicit formula over zeta zeros");
    se->add_option("--a", expl.a);
    se->add_option("--theta", expl.theta, "theta, e.g. 15.7 or 5pi");
    se->add_option("--max-zeros", expl.max_zeros, "use only the first K ordinates (0: all)");
    se->add_option("--heights", expl.heights, "sampled heights for the zero-count band")->check(CLI::Range(1, 10000));

    AuditArgs audit;
    auto* sa = app.add_subcommand("audit", "constants of the zero-sum and covering estimates");
    sa->add_option("--lambda", audit.lambda);
    sa->add_option("--x", audit.x, "x for the prime-power tail");
    sa->add_option("--c", audit.c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    json config = {{"threads", common.threads == 0 ? default_threads() : common.threads},
                   {"out", common.out},
                   {"format", common.format},
                   {"svg", common.svg},
                   {"seed", common.seed},
                   {"tol", common.tol},
                   {"zeros", resolve_zero_path(common.zeros)}};
    try {
        if (common.threads > 0) set_default_threads(common.threads);
        Outcome o;
        std::string command;
        if (*sb) {
            command = "bounds";
            config["A"] = bounds.A;
            config["target"] = bounds.target;
        } else if (*so) {
            command = "optimize";
            config["A"] = optimize.A;
            config["target"] = optimize.target;
            config["init"] = optimize.init;
            config["max_evals"] = optimize.max_evaluations;
            config["restarts"] = optimize.restarts;
        } else if (*sd) {
            command = "dual";
            config["witness"] = dual.witness;
            config["A"] = dual.A;
            config["target"] = dual.target;
            config["n_max"] = dual.n_max;
            config["atom_bound"] = dual.atom_bound;
        } else if (*sp) {
            command = "primes";
            config["max_ratio"] = primes.max_ratio;
            config["checkpoint"] = primes.checkpoint;
            config["verify"] = primes.verify_count;
            config["verify_max"] = primes.verify_max;
            config["c"] = primes.c;
            config["window_samples"] = primes.window_samples;
        } else if (*se) {
            command = "explicit";
            config["a"] = expl.a;
            config["theta"] = expl.theta;
            config["max_zeros"] = expl.max_zeros;
            config["heights"] = expl.heights;
        } else {
            command = "audit";
            config["lambda"] = audit.lambda;
            config["x"] = audit.x;
            config["c"] = audit.c;
        }
        std::cerr << "fgap " << command << " config: " << config.dump() << '\n';
        const auto t0 = std::chrono::steady_clock::now();
        if (command == "bounds") o = run_bounds(bounds, common);
        else if (command == "optimize") o = run_optimize(optimize, common);
        else if (command == "dual") o = run_dual(dual, common);
        else if (command == "primes") o = run_primes(primes, common);
        else if (command == "explicit") o = run_explicit(expl, common);
        else o = run_audit(audit, common);
        emit(command, o, common, config);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "fgap " << command << ": " << (o.failures.empty() ? "pass" : "FAIL") << " in " << secs << " s\n";
        for (const auto& f : o.failures) std::cerr << "  failed: " << f << '\n';
        return o.failures.empty() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
