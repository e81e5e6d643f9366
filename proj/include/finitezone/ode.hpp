#pragma once

#include <array>
#include <functional>
#include <vector>

#include "finitezone/types.hpp"

namespace fz {

using VectorField = std::function<CVector(double x, const CVector& y)>;

// Dense output of an adaptive Dormand-Prince 5(4) integration. Each accepted
// step keeps its continuous-extension coefficients, so evaluation at stored
// step points reproduces the step solution exactly.
class Trajectory {
public:
    double start() const { return xs_.front(); }
    double end() const { return xs_.back(); }
    const std::vector<double>& nodes() const { return xs_; }
    const std::vector<CVector>& states() const { return ys_; }
    std::size_t steps() const { return xs_.size() - 1; }

    CVector operator()(double x) const;
    const CVector& final_state() const { return ys_.back(); }

private:
    friend Trajectory solve_ivp(const VectorField&, const CVector&, double, double, double, int);

    std::vector<double> xs_;
    std::vector<CVector> ys_;
    // Per step: five coefficient vectors of the continuous extension.
    std::vector<std::array<CVector, 5>> dense_;
};

// Integrates y' = rhs(x, y) from x0 to x1 (either direction) with local error
// per step below tol (mixed absolute/relative). Throws StepUnderflow when the
// step collapses.
Trajectory solve_ivp(const VectorField& rhs, const CVector& y0, double x0, double x1, double tol,
                     int max_steps = 2000000);

}  // namespace fz
