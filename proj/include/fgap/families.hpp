#pragma once

#include <string>
#include <vector>

#include "fgap/fourier_pair.hpp"

namespace fgap {

// H(x) = cos(2 pi x) / (1 - 16 x^2) and its derivative, with the removable points x = +-1/4 handled.
double cosine_kernel(double x);
double cosine_kernel_prime(double x);

struct DilatedCosineKernel {
    double lambda = 1.0;
};

struct FejerKernel {
    double lambda = 1.0;
};

struct GaussianTerm {
    double coefficient;
    int power;  // m in x^{2m}
    double rate;
};

struct GaussianMixture {
    std::vector<GaussianTerm> terms;
};

FourierPair make_dilated_cosine(double lambda);
FourierPair make_fejer(double lambda);
FourierPair make_gaussian_mixture(const GaussianMixture& mix);

inline FourierPair to_pair(const DilatedCosineKernel& k) { return make_dilated_cosine(k.lambda); }
inline FourierPair to_pair(const FejerKernel& k) { return make_fejer(k.lambda); }
inline FourierPair to_pair(const GaussianMixture& m) { return make_gaussian_mixture(m); }

// Transform of c x^{2m} e^{-s x^2}.
double gaussian_term_transform(const GaussianTerm& term, double t);

// -4.8 x^2 e^{-3.3x^2} + 1.5 x^2 e^{-7.4x^2} + 520 x^24 e^{-9.7x^2} + 1.3 e^{-2.8x^2} + 0.18 e^{-2x^2}
GaussianMixture reference_mixture();

// One "c m s" term per line; '#' starts a comment.
GaussianMixture parse_mixture_terms(const std::string& text);
GaussianMixture load_mixture_file(const std::string& path);
std::string format_mixture(const GaussianMixture& mix);

}  // namespace fgap
