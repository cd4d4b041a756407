#pragma once

#include <functional>
#include <vector>

namespace fgap {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 50000;
    double truncation_radius = 60.0;

    double target(double value) const;
};

// A value with an absolute error estimate.
struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
    friend Estimate operator+(Estimate a, const Estimate& b) { return a += b; }
    friend Estimate operator*(double s, Estimate e) { return {s * e.value, std::abs(s) * e.error}; }
};

using RealFn = std::function<double(double)>;

// Global adaptive Gauss-Kronrod (21 point) over consecutive panels nodes[i]..nodes[i+1].
// Throws ToleranceError (carrying the best estimate) when the subdivision budget runs out.
Estimate integrate(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q);
Estimate integrate(const RealFn& f, double a, double b, const QuadratureSpec& q);

// Same, but returns whatever was reached instead of throwing.
Estimate integrate_best_effort(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q);

enum class Part { abs, positive };

// Integral of |f| or max(f,0): each panel is sampled, sign changes are located by bisection
// and become extra panel boundaries so the kinks are never straddled.
Estimate integrate_part(const RealFn& f, const std::vector<double>& nodes, const QuadratureSpec& q, Part part,
                        int samples_per_panel = 32);

// Sign changes of f on [a,b] found on a uniform sample grid and refined to ~1e-15 relative.
std::vector<double> sign_changes(const RealFn& f, double a, double b, int samples);

// Evenly spaced nodes a, a+h, ..., b with h <= max_step.
std::vector<double> uniform_nodes(double a, double b, double max_step);

}  // namespace fgap
