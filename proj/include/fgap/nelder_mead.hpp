#pragma once

#include <functional>
#include <vector>

namespace fgap {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Minimizes f from x0 with an axis-aligned initial simplex of the given step sizes.
// Stops when the spread of simplex values falls below tol or after max_evals evaluations.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& x0,
                             const std::vector<double>& step, int max_evals, double tol);

}  // namespace fgap
