#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgap/families.hpp"
#include "fgap/fourier_pair.hpp"

namespace fgap {

enum class Target { C, Cplus };
const char* to_string(Target t);
Target parse_target(const std::string& text);

// Unique root in (0,1) of 1 - 1/A = sin(pi l/2) - (pi l/2) cos(pi l/2); lambda(inf) = 1.
double lambda_of_A(double A);
double lambda_of_A(const Penalty& A);

struct LowerBound {
    double value = 0.0;
    double cosine_branch = 0.0;  // (pi A c0 / 2) cos(pi lambda(A)/2)
    double fejer_branch = 0.0;   // 2A - 2 sqrt(A(A-1))
    double lambda = 1.0;
    std::string witness;
};

struct UpperBound {
    double value = 2.0;
    double gamma = 1.0;  // mollification dilation, 1 when unused
    bool mollified = false;
    std::string witness;
};

// Both branches are always reported; value is their maximum (c0 at A = inf).
LowerBound lower_bound_C(const Penalty& A);
UpperBound upper_bound_C(const Penalty& A);
UpperBound upper_bound_Cplus(const Penalty& A);

// Constants entering the upper bounds.
inline constexpr double kPsiAtomBound = 0.6;        // largest psi delta coefficient (default witness)
inline constexpr double kPsiExampleBound = 1.2;     // sup norm of the Psi example
inline constexpr double kPsiExampleAtom = 0.444;    // largest Psi delta coefficient
inline constexpr double kThresholdC = 2.6;
inline constexpr double kThresholdCplus = 1.222;

struct BoundRecord {
    Penalty A = Penalty::infinite();
    Target target = Target::C;
    double lower = 1.0;
    double upper = 2.0;
    std::string lower_witness;
    std::string upper_witness;
};

BoundRecord bound_record(const Penalty& A, Target target, const QuadratureSpec& q = {});
std::vector<BoundRecord> bounds_table(const std::vector<Penalty>& A_values, Target target, const QuadratureSpec& q = {});
std::string bounds_csv(const std::vector<BoundRecord>& rows);
nlohmann::json to_json(const BoundRecord& r);

struct OptimizerConfig {
    int max_evaluations = 3000;
    double initial_simplex_scale = 0.1;
    double convergence_tol = 1e-10;
    std::uint64_t seed = 1;
    int restarts = 5;
};

struct OptimizeResult {
    GaussianMixture mixture;
    FunctionalReport report;
    double initial_value = 0.0;
    bool improved = false;
    bool budget_exhausted = false;  // no restart beat the initial value
    int evaluations = 0;
    std::vector<double> restart_values;
};

OptimizeResult optimize_mixture(const Penalty& A, Mode mode, const GaussianMixture& init, const OptimizerConfig& cfg,
                                const QuadratureSpec& q = {});

nlohmann::json to_json(const FunctionalReport& r);
nlohmann::json to_json(const GaussianMixture& m);

}  // namespace fgap
