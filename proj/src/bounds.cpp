#include "fgap/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fgap/dual.hpp"
#include "fgap/errors.hpp"
#include "fgap/nelder_mead.hpp"
#include "fgap/parallel.hpp"
#include "fgap/roots.hpp"
#include "fgap/special.hpp"

namespace fgap {

using std::numbers::pi;

const char* to_string(Target t) { return t == Target::C ? "C" : "Cplus"; }

Target parse_target(const std::string& text) {
    if (text == "C") return Target::C;
    if (text == "Cplus" || text == "C+") return Target::Cplus;
    throw DomainError("unknown target '" + text + "' (expected C or Cplus)");
}

namespace {

std::string fmt(double v, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double lambda_rhs(double l) { return std::sin(0.5 * pi * l) - 0.5 * pi * l * std::cos(0.5 * pi * l); }

}  // namespace

double lambda_of_A(double A) {
    if (!(A > 1.0)) throw DomainError("lambda_of_A: A must exceed 1");
    if (std::isinf(A)) return 1.0;
    const double target = 1.0 - 1.0 / A;
    auto g = [target](double l) { return lambda_rhs(l) - target; };
    double l = bisect(g, 0.0, 1.0, 1e-12);
    for (int i = 0; i < 2; ++i) {
        const double d = 0.25 * pi * pi * l * std::sin(0.5 * pi * l);
        if (d <= 0.0) break;
        const double next = l - g(l) / d;
        if (next > 0.0 && next < 1.0) l = next;
    }
    return l;
}

double lambda_of_A(const Penalty& A) { return A.is_infinite() ? 1.0 : lambda_of_A(A.value()); }

LowerBound lower_bound_C(const Penalty& A) {
    LowerBound b;
    if (A.is_infinite()) {
        b.value = b.cosine_branch = c0();
        b.fejer_branch = 1.0;  // limit of 2A - 2 sqrt(A(A-1))
        b.lambda = 1.0;
        b.witness = "H(x)=cos(2pi x)/(1-16x^2), value c0=" + fmt(c0());
        return b;
    }
    const double a = A.value();
    b.fejer_branch = 2.0 * a - 2.0 * std::sqrt(a * (a - 1.0));
    if (a == 1.0) {
        b.lambda = 0.0;
        b.cosine_branch = 0.5 * pi * c0();
    } else {
        b.lambda = lambda_of_A(a);
        b.cosine_branch = 0.5 * pi * a * c0() * std::cos(0.5 * pi * b.lambda);
    }
    b.value = std::max(b.fejer_branch, b.cosine_branch);
    const double fejer_lambda = a == 1.0 ? 1.0 : std::sqrt((a - 1.0) / a);
    b.witness = "cosine H(x/" + fmt(b.lambda, 8) + ")=" + fmt(b.cosine_branch) + "; fejer K(x/" + fmt(fejer_lambda, 8) +
                ")=" + fmt(b.fejer_branch) + "; max=" + (b.cosine_branch >= b.fejer_branch ? "cosine" : "fejer");
    return b;
}

namespace {

// gamma = 1/(1 - c/(2(A - shift)))
UpperBound mollified_upper(const Penalty& A, double base, double c, double shift, double threshold, bool inclusive,
                           const std::string& name) {
    UpperBound u;
    if (A.is_infinite()) {
        u.value = std::min(base, 2.0);
        u.gamma = 1.0;
        u.mollified = false;
        u.witness = name + ", sup norm " + fmt(base);
        return u;
    }
    const double a = A.value();
    const bool available = inclusive ? a >= threshold : a > threshold;
    if (!available) {
        u.value = 2.0;
        u.witness = "trivial bound 2 (mollification needs A " + std::string(inclusive ? ">= " : "> ") + fmt(threshold) + ")";
        return u;
    }
    u.gamma = 1.0 / (1.0 - c / (2.0 * (a - shift)));
    u.mollified = true;
    u.value = std::min(u.gamma * base, 2.0);
    u.witness = "mollified " + name + ", c=" + fmt(c) + ", gamma=" + fmt(u.gamma) + ", gamma*sup=" + fmt(u.gamma * base);
    return u;
}

}  // namespace

UpperBound upper_bound_C(const Penalty& A) {
    return mollified_upper(A, gorbachev_d0(), kPsiAtomBound, 2.0, kThresholdC, true, "psi (Gorbachev), d0=" + fmt(gorbachev_d0()));
}

UpperBound upper_bound_Cplus(const Penalty& A) {
    return mollified_upper(A, kPsiExampleBound, kPsiExampleAtom, 1.0, kThresholdCplus, false, "Psi example");
}

BoundRecord bound_record(const Penalty& A, Target target, const QuadratureSpec& q) {
    BoundRecord r;
    r.A = A;
    r.target = target;
    const LowerBound lb = lower_bound_C(A);
    r.lower = lb.value;
    r.lower_witness = lb.witness;
    if (target == Target::C) {
        const UpperBound ub = upper_bound_C(A);
        r.upper = ub.value;
        r.upper_witness = ub.witness;
    } else {
        if (!A.is_infinite()) {
            // Any admissible F gives J+(F) <= C+(A); use the reference mixture as a second witness.
            const auto rep = functional(make_gaussian_mixture(reference_mixture()), A, Mode::Jplus, q);
            r.lower_witness += "; mixture J+=" + fmt(rep.functional_value);
            if (rep.functional_value > r.lower) {
                r.lower = rep.functional_value;
                r.lower_witness += " (max)";
            }
        }
        const UpperBound ub = upper_bound_Cplus(A);
        r.upper = ub.value;
        r.upper_witness = ub.witness;
    }
    return r;
}

std::vector<BoundRecord> bounds_table(const std::vector<Penalty>& A_values, Target target, const QuadratureSpec& q) {
    gorbachev_d0();  // warm the cache before fanning out
    std::vector<BoundRecord> rows(A_values.size());
    parallel_for(A_values.size(), [&](std::size_t i) { rows[i] = bound_record(A_values[i], target, q); });
    return rows;
}

std::string bounds_csv(const std::vector<BoundRecord>& rows) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "A,target,lower,upper,lower_witness,upper_witness\n";
    for (const auto& r : rows) {
        os << r.A.str() << ',' << to_string(r.target) << ',' << fmt(r.lower) << ',' << fmt(r.upper) << ','
           << quote(r.lower_witness) << ',' << quote(r.upper_witness) << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const BoundRecord& r) {
    return {{"A", r.A.str()},
            {"target", to_string(r.target)},
            {"lower", r.lower},
            {"upper", r.upper},
            {"lower_witness", r.lower_witness},
            {"upper_witness", r.upper_witness}};
}

nlohmann::json to_json(const FunctionalReport& r) {
    return {{"A", r.A},
            {"mode", to_string(r.mode)},
            {"value_at_zero", r.value_at_zero},
            {"l1_norm", r.l1_norm},
            {"l1_error", r.l1_error},
            {"tail_integral", r.tail_integral},
            {"tail_error", r.tail_error},
            {"functional_value", r.functional_value},
            {"error_estimate", r.error_estimate}};
}

nlohmann::json to_json(const GaussianMixture& m) {
    auto arr = nlohmann::json::array();
    for (const auto& t : m.terms) arr.push_back({{"c", t.coefficient}, {"m", t.power}, {"s", t.rate}});
    return arr;
}

// ---------------------------------------------------------------------------
// Mixture search

namespace {

std::vector<double> pack(const GaussianMixture& m) {
    std::vector<double> x;
    for (const auto& t : m.terms) {
        x.push_back(t.coefficient);
        x.push_back(t.rate);
    }
    return x;
}

GaussianMixture unpack(const std::vector<double>& x, const GaussianMixture& shape) {
    GaussianMixture m = shape;
    for (std::size_t k = 0; k < m.terms.size(); ++k) {
        m.terms[k].coefficient = x[2 * k];
        m.terms[k].rate = x[2 * k + 1];
    }
    return m;
}

}  // namespace

OptimizeResult optimize_mixture(const Penalty& A, Mode mode, const GaussianMixture& init, const OptimizerConfig& cfg,
                                const QuadratureSpec& q) {
    if (A.is_infinite() || !(A.value() > 1.0)) throw DomainError("optimize_mixture needs a finite A > 1");
    if (!(cfg.convergence_tol > 0.0)) throw DomainError("convergence_tol must be positive");
    if (cfg.max_evaluations <= 0 || cfg.restarts <= 0) throw DomainError("optimizer budget must be positive");

    const auto init_report = functional(make_gaussian_mixture(init), A, mode, q);
    QuadratureSpec search = q;
    search.abs_tol = std::max(q.abs_tol, 1e-9);
    search.rel_tol = std::max(q.rel_tol, 1e-8);

    auto objective = [&](const std::vector<double>& x) {
        const auto m = unpack(x, init);
        for (const auto& t : m.terms)
            if (!(t.rate > 0.0)) return std::numeric_limits<double>::infinity();
        try {
            return -functional(make_gaussian_mixture(m), A, mode, search).functional_value;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const auto x0 = pack(init);
    struct Run {
        NelderMeadResult nm;
    };
    std::vector<Run> runs(static_cast<std::size_t>(cfg.restarts));
    parallel_for(runs.size(), [&](std::size_t r) {
        std::mt19937_64 rng(cfg.seed * 1000003ULL + r);
        std::normal_distribution<double> noise(0.0, cfg.initial_simplex_scale);
        std::vector<double> start = x0, step(x0.size());
        for (std::size_t i = 0; i < x0.size(); ++i) {
            if (r > 0) start[i] *= 1.0 + noise(rng);
            if (i % 2 == 1) start[i] = std::abs(start[i]);
            const double base = std::abs(start[i]) > 0 ? std::abs(start[i]) : 1.0;
            step[i] = cfg.initial_simplex_scale * base;
        }
        runs[r].nm = nelder_mead(objective, start, step, cfg.max_evaluations, cfg.convergence_tol);
    });

    OptimizeResult out;
    out.initial_value = init_report.functional_value;
    std::size_t best = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        out.evaluations += runs[r].nm.evaluations;
        out.restart_values.push_back(-runs[r].nm.value);
        if (runs[r].nm.value < runs[best].nm.value) best = r;
    }
    const auto candidate = unpack(runs[best].nm.x, init);
    FunctionalReport cand_report;
    bool ok = false;
    try {
        cand_report = functional(make_gaussian_mixture(candidate), A, mode, q);
        ok = cand_report.functional_value > init_report.functional_value;
    } catch (const Error&) {
        ok = false;
    }
    if (ok) {
        out.mixture = candidate;
        out.report = cand_report;
        out.improved = true;
    } else {
        out.mixture = init;
        out.report = init_report;
        out.budget_exhausted = true;
    }
    return out;
}

}  // namespace fgap
