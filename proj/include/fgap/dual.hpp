#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgap/bounds.hpp"
#include "fgap/fourier_pair.hpp"
#include "fgap/quadrature.hpp"

namespace fgap {

inline constexpr double kTau = 0.29289;

// alpha: even, 1-periodic, piecewise linear through
// (0,-1), (tau, 2tau-1), (tau+eps, 1), (1/2-2eps, 1), (1/2-eps, 1-y), (1/2, 1).
struct AlphaProfile {
    double tau = kTau;
    double epsilon = 0.0;
    double y = 0.0;

    std::array<double, 6> nodes() const;
    std::array<double, 6> values() const;
    double operator()(double x) const;
};

double epsilon_of(double y, double tau = kTau);
AlphaProfile make_alpha_profile(double y, double tau = kTau);

// G_n = int_0^{1/2} (1 - alpha(x))/j(x) cos(2 pi n x) dx with j(x) = sin(2 pi x)/(2 pi x).
Estimate profile_moment(const AlphaProfile& p, int n, const QuadratureSpec& q = {1e-14, 1e-13, 200000, 0.0});
double orthogonality_residual(const AlphaProfile& p);

AlphaProfile solve_alpha(double y_lo = 0.3, double y_hi = 0.6, double tau = kTau);
double compute_d0(const AlphaProfile& p);
// d0 for the default solve, computed once.
double gorbachev_d0();
const AlphaProfile& gorbachev_profile();

struct FourierCoefficients {
    double d0 = 0.0;
    std::vector<double> alpha;  // alpha_n, n = 0..n_max (the normalisation quoted for a_1..a_3)
    std::vector<double> a;      // d0 * alpha_n: the delta coefficients of psi-hat
    std::vector<double> b;      // b_n
    double alpha_l2_sq = 0.0;   // int over one period of alpha^2
    double b_abs_integral = 0.0;
    double b_abs_error = 0.0;
    double phi_hat_sup = 0.0;   // max of |phi-hat| from the b_n
    bool a0_vanishes = false;   // |a_0| <= 1e-9
    bool b01_vanish = false;    // |b_0|, |b_1| <= 1e-9
};

FourierCoefficients fourier_coeffs(const AlphaProfile& p, int n_max);
double alpha_coefficient(const AlphaProfile& p, int n);

struct DeltaAtom {
    double location;
    double coefficient;
};

// height * indicator of [center - width/2, center + width/2]
struct TransformBlock {
    double center;
    double width;
    double height;
};

struct SupCertificate {
    double value = 0.0;  // certified sup estimate (includes allowances)
    double argmax = 0.0;
    double sampled_max = 0.0;
    double refined_max = 0.0;
    double grid_step = 0.0;
    double range = 0.0;  // samples cover [0, range]
    int refinement_depth = 0;
    int refined_points = 0;
    double lipschitz_allowance = 0.0;
    double tail_allowance = 0.0;    // bound beyond the sampled range
    double series_allowance = 0.0;  // truncated series tail, 0 for closed forms
    std::size_t samples = 0;
    bool analytic = false;          // value from an analytic bound (mollified witnesses)
};

struct DualWitness {
    std::string name;
    RealFn continuous_part;
    nlohmann::json continuous_terms;
    std::vector<DeltaAtom> delta_atoms;        // transform-side point masses (both signs listed)
    std::vector<TransformBlock> transform_blocks;
    RealFn transform_profile;                  // used when the continuous transform is not a block sum
    double smoothing_width = 0.0;              // width of the box kernel convolved into the transform
    std::function<std::vector<double>(double, double)> kinks;
    double feature_scale = 0.05;
    SupCertificate sup_norm;
    bool transform_on_core = false;
    double core_deviation = 0.0;   // largest |transform - 1| forced on (-1,1) by atoms/blocks
    double declared_atom_bound = 0.0;

    double operator()(double x) const { return continuous_part(x); }
    // Transform value at t, atoms excluded unless smoothed into boxes.
    double transform_at(double t) const;
    std::vector<double> transform_breakpoints(double lo, double hi) const;
};

struct SupOptions {
    double range = 4.0;
    double step = 1e-4;
    int top_k = 100;
    int refinement_depth = 40;
    double lipschitz = 0.0;      // if > 0, adds lipschitz * step / 2
    double tail_allowance = 0.0; // bound on |f| beyond range
    std::vector<double> extra_points;
};

// Samples |f| on [0, range] (f assumed even), refines the top samples by golden-section search.
SupCertificate certify_sup(const RealFn& f, const SupOptions& opt);

struct CoefficientSet {
    AlphaProfile profile;
    FourierCoefficients coeffs;
};

DualWitness build_psi(const AlphaProfile& p, const FourierCoefficients& c, int n_max, const SupOptions& opt = {});
DualWitness build_psi_default(int n_max = 2000);

struct TildeA0 {
    double value = 0.0;
    long terms = 0;
    double error_bound = 0.0;
};
TildeA0 tilde_psi_a0(double tol = 1e-12);
DualWitness build_tilde_psi();

// Psi example parameters
struct PsiExampleParams {
    double a = 0.018, b = 0.027, c = 0.002;
    double atom1 = -0.444, atom3 = -0.005;
};
DualWitness build_psi_example(const PsiExampleParams& prm = {});

struct MollifiedWitness {
    DualWitness base;
    DualWitness witness;
    double gamma = 1.0;
    double lambda_m = 0.0;
    double c = 0.0;
    Target mode = Target::C;
    std::string A;
    double sup_bound = 0.0;          // gamma * base sup
    double max_atom = 0.0;           // largest |atom coefficient| of the base
    bool atoms_within_bound = true;  // max_atom <= c
    double transform_min = 0.0;
    double transform_max = 0.0;
    bool transform_in_range = true;  // [1-A, 1] for Cplus, |.| <= A-1 for C
};

MollifiedWitness mollify(const DualWitness& base, const Penalty& A, Target mode, double c = 0.0);

struct PairingResult {
    double numeric = 0.0;       // int F * witness dx
    double numeric_error = 0.0;
    double predicted = 0.0;     // int Fhat * witness-hat dt (atoms included)
    double value_at_zero = 0.0; // F(0)
    double l1_norm = 0.0;
};

// F must be even with support_radius set.
PairingResult pairing(const DualWitness& w, const FourierPair& F, const QuadratureSpec& q = {});

nlohmann::json to_json(const DualWitness& w);
nlohmann::json to_json(const MollifiedWitness& m);
nlohmann::json to_json(const FourierCoefficients& c, int max_listed = 10);

}  // namespace fgap
