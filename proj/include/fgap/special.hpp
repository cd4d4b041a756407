#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace fgap {

// sin(z)/z with the removable point filled in.
inline double sin_over(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

// Derivative of sin(z)/z.
inline double sin_over_prime(double z) {
    if (std::abs(z) < 1e-3) {
        const double z2 = z * z;
        return z * (-1.0 / 3.0 + z2 / 30.0 - z2 * z2 / 840.0);
    }
    return (z * std::cos(z) - std::sin(z)) / (z * z);
}

// Normalized sinc: sin(pi x)/(pi x).
inline double sinc(double x) { return sin_over(std::numbers::pi * x); }

// Sine integral by its power series; accurate to ~1e-15 for |x| <= 8.
double sine_integral(double x);

// Physicists' Hermite polynomials H_0..H_n at u (three-term recurrence).
std::vector<double> hermite_table(int n, double u);
double hermite(int n, double u);

// Neumaier variant of Kahan summation.
class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    KahanSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// c0 = H(0)/||H||_1 = 2/Si(pi).
double c0();

}  // namespace fgap
