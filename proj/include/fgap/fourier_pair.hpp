#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgap/quadrature.hpp"

namespace fgap {

// A in [1, inf], with infinity kept as a separate state rather than a huge double.
class Penalty {
public:
    static Penalty infinite() { return Penalty(); }
    static Penalty finite(double a);
    // Accepts decimals, "inf" and fractions such as "36/11".
    static Penalty parse(const std::string& text);

    bool is_infinite() const { return !value_; }
    double value() const;  // throws DomainError when infinite
    std::string str() const;

private:
    Penalty() = default;
    explicit Penalty(double a) : value_(a) {}
    std::optional<double> value_;
};

enum class TransformKind { closed_form, numeric_oracle };
enum class Mode { J, Jplus };

const char* to_string(Mode m);
Mode parse_mode(const std::string& text);

// |g(x)| <= constant * |x|^power * exp(-rate x^2) for |x| >= valid_from (rate may be 0,
// in which case power must be < -1).
struct DecayTerm {
    double constant = 0.0;
    double power = -2.0;
    double rate = 0.0;
    double valid_from = 0.0;

    // Bound on the one-sided tail: int_r^inf |x|^w * envelope, with w in {0 (plain), 1 (log-weighted)}.
    double tail(double r) const;
    double log_weighted_tail(double r) const;
};

double tail_bound(const std::vector<DecayTerm>& terms, double r);
double log_weighted_tail_bound(const std::vector<DecayTerm>& terms, double r);

// g(x) = sum coef * |x|^{-power} * cos(2 pi freq x) + remainder for |x| >= radius,
// |remainder| <= remainder_constant * |x|^{-remainder_power}.
struct AsymptoticTail {
    struct Term {
        double coef;
        double power;
        double freq;
    };
    std::vector<Term> terms;
    double radius = 0.0;
    double remainder_constant = 0.0;
    double remainder_power = 2.0;
};

// int_r^inf x^{-p} cos(w x) dx for r > 0, p > 1 (p > 0 when w != 0).
double power_cosine_tail(double p, double w, double r);

struct FourierPair {
    RealFn eval_f;
    RealFn eval_fhat;
    TransformKind transform_kind = TransformKind::closed_form;
    std::optional<double> support_radius;
    bool is_even = true;
    std::optional<double> l1_closed_form;

    // Envelopes used to bound truncated tails.
    std::vector<DecayTerm> f_decay;
    std::vector<DecayTerm> fhat_decay;
    std::optional<AsymptoticTail> f_asymptotic;

    // Sample spacing used when hunting sign changes of F (and of F-hat).
    double f_feature_scale = 1.0 / 16.0;
    double fhat_feature_scale = 1.0 / 64.0;

    std::string description;
};

struct FunctionalReport {
    std::string A;  // "inf" or decimal
    double A_value = 0.0;
    bool A_infinite = false;
    double value_at_zero = 0.0;
    double l1_norm = 0.0;
    double tail_integral = 0.0;
    double functional_value = 0.0;
    Mode mode = Mode::J;
    double error_estimate = 0.0;
    double l1_error = 0.0;
    double tail_error = 0.0;
};

Estimate l1_norm_numeric(const FourierPair& fp, const QuadratureSpec& q = {});
// Closed form when available (after a numeric cross-check), quadrature otherwise.
Estimate l1_norm(const FourierPair& fp, const QuadratureSpec& q = {});
Estimate tail_abs_integral(const FourierPair& fp, const QuadratureSpec& q = {});
Estimate tail_pos_integral(const FourierPair& fp, const QuadratureSpec& q = {});
FunctionalReport functional(const FourierPair& fp, const Penalty& A, Mode mode, const QuadratureSpec& q = {});
Estimate numeric_transform(const FourierPair& fp, double t, const QuadratureSpec& q = {});

// F(x/lambda) with transform lambda*Fhat(lambda t).
FourierPair dilate(const FourierPair& fp, double lambda);

}  // namespace fgap
