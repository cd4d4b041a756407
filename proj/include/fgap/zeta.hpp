#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace fgap {

// Riemann-Siegel theta function (Stirling series; accurate to ~1e-12 for t >= 9).
double rs_theta(double t);

// zeta(s) by Euler-Maclaurin summation; intended for moderate |Im s|.
std::complex<double> zeta_em(std::complex<double> s);

// Hardy Z(t) = exp(i theta(t)) zeta(1/2 + i t): Euler-Maclaurin below 2000, Riemann-Siegel with
// correction terms C0..C4 above.
double hardy_z(double t);
double hardy_z_em(double t);
double hardy_z_rs(double t);

// t with theta(t) = n pi (n >= -1).
double gram_point(long n);

struct ZeroSearchReport {
    std::vector<double> zeros;
    long gram_blocks = 0;
    long refined_blocks = 0;  // blocks that needed extra sampling
};

// First `count` positive ordinates, located by sign changes of Z between good Gram points and
// polished with Brent's method.
ZeroSearchReport compute_zeta_zeros(std::size_t count);

std::string format_zero_table(const std::vector<double>& zeros, const std::string& comment);

}  // namespace fgap
