#include "fgap/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>

#include "fgap/errors.hpp"
#include "fgap/roots.hpp"
#include "fgap/special.hpp"

namespace fgap {

double QuadratureSpec::target(double value) const { return std::max(abs_tol, rel_tol * std::abs(value)); }

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// 21-point Kronrod rule with the embedded 10-point Gauss rule; the error is |K - G|.
Panel panel(const RealFn& f, double a, double b) {
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = wk[0] * f0, g = 0.0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double s = f(c - h * xk[i]) + f(c + h * xk[i]);
        k += wk[i] * s;
        if (i % 2 == 1) g += wg[i / 2] * s;
    }
    return {a, b, h * k, std::abs(h * (k - g))};
}

Estimate run(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q, bool strict) {
    std::priority_queue<Panel> heap;
    KahanSum value;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i + 1] <= nodes[i]) continue;
        Panel p = panel(f, nodes[i], nodes[i + 1]);
        value += p.value;
        error += p.error;
        heap.push(p);
    }
    int splits = 0;
    double frozen_error = 0.0;  // panels too narrow to split
    while (!heap.empty() && error > q.target(value.value())) {
        if (splits >= q.max_subdivisions) {
            if (strict)
                throw ToleranceError("quadrature: subdivision budget exhausted", value.value(), error);
            break;
        }
        Panel p = heap.top();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            frozen_error += p.error;
            heap.pop();
            continue;
        }
        heap.pop();
        Panel l = panel(f, p.a, mid), r = panel(f, mid, p.b);
        value += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        ++splits;
    }
    // Recompute the error from scratch; the running sum drifts under cancellation.
    double e = frozen_error;
    while (!heap.empty()) {
        e += heap.top().error;
        heap.pop();
    }
    return {value.value(), e};
}

}  // namespace

Estimate integrate(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q) {
    return run(f, nodes, q, true);
}

Estimate integrate(const RealFn& f, double a, double b, const QuadratureSpec& q) {
    return run(f, {a, b}, q, true);
}

Estimate integrate_best_effort(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q) {
    return run(f, nodes, q, false);
}

std::vector<double> sign_changes(const RealFn& f, double a, double b, int samples) {
    std::vector<double> roots;
    double x0 = a, f0 = f(a);
    for (int i = 1; i <= samples; ++i) {
        const double x1 = (i == samples) ? b : a + (b - a) * i / samples;
        const double f1 = f(x1);
        if (f0 != 0.0 && f1 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            roots.push_back(bisect(f, x0, x1, 1e-15 * std::max(1.0, std::abs(x1))));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

Estimate integrate_part(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q, Part part,
                        int samples_per_panel) {
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        refined.push_back(nodes[i]);
        for (double r : sign_changes(f, nodes[i], nodes[i + 1], samples_per_panel))
            if (r > nodes[i] && r < nodes[i + 1]) refined.push_back(r);
    }
    if (!nodes.empty()) refined.push_back(nodes.back());
    std::sort(refined.begin(), refined.end());
    RealFn g;
    if (part == Part::abs)
        g = [&f](double x) { return std::abs(f(x)); };
    else
        g = [&f](double x) { return std::max(f(x), 0.0); };
    return integrate(g, refined, q);
}

std::vector<double> uniform_nodes(double a, double b, double max_step) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / max_step)));
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = (i == n) ? b : a + (b - a) * static_cast<double>(i) / n;
    return v;
}

}  // namespace fgap
