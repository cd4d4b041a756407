#include "fgap/special.hpp"

#include "fgap/errors.hpp"

namespace fgap {

double sine_integral(double x) {
    if (std::abs(x) > 8.0) throw DomainError("sine_integral: series used only for |x| <= 8");
    // Si(x) = sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    const double x2 = x * x;
    double term = x;  // x^{2k+1}/(2k+1)!
    KahanSum s;
    for (int k = 0; k < 60; ++k) {
        const double contrib = term / (2 * k + 1);
        s += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(s.value())) break;
        term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return s.value();
}

std::vector<double> hermite_table(int n, double u) {
    std::vector<double> h(static_cast<std::size_t>(n) + 1);
    h[0] = 1.0;
    if (n >= 1) h[1] = 2.0 * u;
    for (int k = 1; k < n; ++k) h[k + 1] = 2.0 * u * h[k] - 2.0 * k * h[k - 1];
    return h;
}

double hermite(int n, double u) {
    if (n == 0) return 1.0;
    double hm = 1.0, h = 2.0 * u;
    for (int k = 1; k < n; ++k) {
        const double hn = 2.0 * u * h - 2.0 * k * hm;
        hm = h;
        h = hn;
    }
    return h;
}

double c0() {
    static const double value = 2.0 / sine_integral(std::numbers::pi);
    return value;
}

}  // namespace fgap
