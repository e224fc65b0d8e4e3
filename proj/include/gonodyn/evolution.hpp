#pragma once

#include <vector>

#include "gonodyn/general.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn {

// One evolution step of the four-type model:
//   x' = a1 x u + b1 y u
//   y' = c1 x v + b2 y u + d1 y v
//   u' = a2 x u + c2 x v + b3 y u + d2 y v
//   v' = b4 y u + d3 y v
// Quadratic and degree-2 homogeneous; the coordinate sum maps to
// (x + y)(u + v). Assumes p is valid.
State4 apply(const HemophiliaParams& p, const State4& t);

enum class Termination {
    CapReached,         // ran the requested number of steps
    ConvergedToOrigin,  // max-norm fell below origin_tol
    ConvergedToPoint,   // successive states closer than point_tol, norm above origin_tol
    Overflowed,         // non-finite coordinate or max-norm above max_norm
};

const char* to_string(Termination t);

struct IterationCaps {
    double max_norm = 1e12;
    double origin_tol = 1e-12;
    double point_tol = 1e-13;
};

template <class StateT>
struct Trajectory {
    std::vector<StateT> states;  // states[0] = initial point, states[k+1] = W(states[k])
    Termination termination = Termination::CapReached;

    const StateT& last() const { return states.back(); }
    // Number of applications of the operator actually performed.
    int steps() const { return static_cast<int>(states.size()) - 1; }
};

// Runs up to n steps, stopping early per the caps. Non-finite states are
// never stored; the trajectory ends at the last finite state with
// termination Overflowed. Throws InvalidParamsError on bad parameters.
Trajectory<State4> iterate(const HemophiliaParams& p, const State4& t0,
                           int n = 200, const IterationCaps& caps = {});

Trajectory<StateN> iterate(const GeneralOperator& op, const StateN& t0,
                           int n = 200, const IterationCaps& caps = {});

}  // namespace gonodyn
