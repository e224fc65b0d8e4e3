#pragma once

#include <optional>
#include <string>
#include <utility>

#include "gonodyn/evolution.hpp"
#include "gonodyn/general.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn {

// Membership flags for the invariant / sign-structured sets:
//   O  x = y = 0 or u = v = 0 (maps to the origin in one step)
//   I  y = v = 0 plane (invariant)
//   J  subset of I with x = u (invariant when a1 = a2)
//   P  all coordinates >= 0
//   P0 subset of P with (x + y)(u + v) < 4
//   Q  subset of P with coordinate sum <= 4; q_level is the sum
//   N  all coordinates <= 0
//   N0 x, y <= 0 and u, v >= 0
//   N1 x, y >= 0 and u, v <= 0
//   delta0 subset of P with sum > 4 and max{a1a2xu, b2b3yu, d1d3yv} > 1
//          (parameter dependent, reported only when params are supplied)
struct Region {
    bool O = false, I = false, J = false;
    bool P = false, P0 = false;
    bool N = false, N0 = false, N1 = false;
    std::optional<double> q_level;   // smallest a in [0,4] with t in Q_a
    std::optional<bool> delta0;

    bool none() const;
    std::string to_string() const;  // e.g. "P;P0;Q(3.5)" or "None"
};

Region classify_region(const State4& t);
Region classify_region(const State4& t, const HemophiliaParams& p);

enum class LimitOutcome { ConvergesToOrigin, ConvergesToPoint, Diverges, Unknown };

const char* to_string(LimitOutcome o);

// Which sufficient condition fired.
enum class JustificationKind {
    None,               // Unknown
    SumContraction,     // in P with (x+y)(u+v) < 4: sum contracts quadratically
    BoundaryDefect,     // on the sum<=4 shell, defect expression nonzero at step k
    ProductDip,         // sum > 4 but (x+y)(u+v) dipped below 4 at step k
    SelfReproduction,   // a self-reproducing pairing product exceeds 1
    SignRegion,         // nonpositive / mixed-sign quadrant reduced to an image state
    AxisClosedForm,     // exact closed form on an invariant plane
    EmpiricalOverflow,  // bounded search overflowed; divergence observed, not proved
};

const char* to_string(JustificationKind k);

struct LimitPrediction {
    LimitOutcome outcome = LimitOutcome::Unknown;
    JustificationKind kind = JustificationKind::None;
    std::string detail;           // e.g. "boundary-defect(k=0)" or "sign-region(N)+self-reproduction"
    std::optional<State4> point;  // set when outcome == ConvergesToPoint
};

struct PredictorConfig {
    int k_max = 50;               // bounded-search horizon
    double boundary_tol = 1e-12;  // guard band on region boundary comparisons
    double max_norm = 1e12;       // overflow cap inside bounded searches
};

// Predicts the orbit limit by testing sufficient conditions in a fixed
// order; returns Unknown when none fires (never guesses). Every
// non-Unknown verdict except EmpiricalOverflow is theorem-backed.
LimitPrediction predict_limit(const HemophiliaParams& p, const State4& t,
                              const PredictorConfig& cfg = {});

// General-operator predictor: ConvergesToOrigin when the coordinate sum
// is below 4, Diverges when some self-reproducing pairing product
// pf(i,l,i) * pm(i,l,l) * x_i * y_l exceeds 1, else Unknown. Requires a
// nonnegative state (NegativeCoordinateError otherwise).
LimitPrediction predict_limit_general(const GeneralOperator& op, const StateN& t,
                                      const PredictorConfig& cfg = {});

// Exact n-step image and limit for initial points on the closed-form
// invariant planes:
//   (x0, 0, u0, 0)            any a1
//   (0, y0, 0, v0)            requires d2 = 0
//   (0, y0, u0, 0)            requires b1 = b4 = 0
// plus the one-step-to-origin sets x = y = 0 and u = v = 0. The limit
// compares the invariant product (a1 a2 x0 u0 etc.) against 1: below in
// magnitude -> origin, equal -> the matching axis fixed point, above ->
// diverges. Throws NotOnSupportedSubspaceError / ParameterConditionError.
std::pair<State4, LimitPrediction> closed_form_axis_trajectory(
    const HemophiliaParams& p, const State4& t0, int n);

enum class SimOutcomeKind { Origin, Point, Blowup, Undecided };

const char* to_string(SimOutcomeKind k);

struct SimOutcome {
    SimOutcomeKind kind = SimOutcomeKind::Undecided;
    State4 last{};
    int steps = 0;
};

// Runs iterate() and reads the termination as an empirical outcome.
SimOutcome simulate_until(const HemophiliaParams& p, const State4& t0,
                          int max_steps = 200, const IterationCaps& caps = {});

}  // namespace gonodyn
