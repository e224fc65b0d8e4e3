#include "gonodyn/limits.hpp"

#include <cmath>
#include <cstdio>

#include "gonodyn/errors.hpp"
#include "gonodyn/fixed_points.hpp"

namespace gonodyn {

namespace {

bool all_nonneg(const State4& t) {
    return t.x >= 0 && t.y >= 0 && t.u >= 0 && t.v >= 0;
}
bool all_nonpos(const State4& t) {
    return t.x <= 0 && t.y <= 0 && t.u <= 0 && t.v <= 0;
}
bool females_nonpos_males_nonneg(const State4& t) {
    return t.x <= 0 && t.y <= 0 && t.u >= 0 && t.v >= 0;
}
bool females_nonneg_males_nonpos(const State4& t) {
    return t.x >= 0 && t.y >= 0 && t.u <= 0 && t.v <= 0;
}

double pair_product(const State4& t) { return (t.x + t.y) * (t.u + t.v); }

// Deviation of x' + y' from 2 on the shell x + y = u + v = 2; nonzero at
// any iterate forces the orbit off the shell and into the contraction
// region.
double boundary_defect(const HemophiliaParams& p, const State4& t) {
    return (p.a1 - 0.5) * t.x * t.u + (p.c1 - 0.5) * t.x * t.v +
           (p.b1 + p.b2 - 0.5) * t.y * t.u + (p.d1 - 0.5) * t.y * t.v;
}

// Largest self-reproducing pairing product; above 1 it squares every step.
double max_self_reproduction(const HemophiliaParams& p, const State4& t) {
    return std::max({p.a1 * p.a2 * t.x * t.u, p.b2 * p.b3 * t.y * t.u,
                     p.d1 * p.d3 * t.y * t.v});
}

}  // namespace

bool Region::none() const {
    return !O && !I && !J && !P && !P0 && !N && !N0 && !N1 && !q_level &&
           !(delta0 && *delta0);
}

std::string Region::to_string() const {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += ';';
        out += name;
    };
    if (O) add("O");
    if (I) add("I");
    if (J) add("J");
    if (P) add("P");
    if (P0) add("P0");
    if (q_level) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "Q(%.6g)", *q_level);
        add(buf);
    }
    if (N) add("N");
    if (N0) add("N0");
    if (N1) add("N1");
    if (delta0 && *delta0) add("Delta0");
    if (out.empty()) out = "None";
    return out;
}

Region classify_region(const State4& t) {
    Region r;
    r.O = (t.x == 0 && t.y == 0) || (t.u == 0 && t.v == 0);
    r.I = (t.y == 0 && t.v == 0);
    r.J = r.I && t.x == t.u;
    r.P = all_nonneg(t);
    r.P0 = r.P && pair_product(t) < 4.0;
    r.N = all_nonpos(t);
    r.N0 = females_nonpos_males_nonneg(t);
    r.N1 = females_nonneg_males_nonpos(t);
    if (r.P && coordinate_sum(t) <= 4.0) r.q_level = coordinate_sum(t);
    return r;
}

Region classify_region(const State4& t, const HemophiliaParams& p) {
    Region r = classify_region(t);
    r.delta0 = r.P && coordinate_sum(t) > 4.0 && max_self_reproduction(p, t) > 1.0;
    return r;
}

const char* to_string(LimitOutcome o) {
    switch (o) {
        case LimitOutcome::ConvergesToOrigin: return "ConvergesToOrigin";
        case LimitOutcome::ConvergesToPoint: return "ConvergesToPoint";
        case LimitOutcome::Diverges: return "Diverges";
        case LimitOutcome::Unknown: return "Unknown";
    }
    return "?";
}

const char* to_string(JustificationKind k) {
    switch (k) {
        case JustificationKind::None: return "none";
        case JustificationKind::SumContraction: return "sum-contraction";
        case JustificationKind::BoundaryDefect: return "boundary-defect";
        case JustificationKind::ProductDip: return "product-dip";
        case JustificationKind::SelfReproduction: return "self-reproduction";
        case JustificationKind::SignRegion: return "sign-region";
        case JustificationKind::AxisClosedForm: return "axis-closed-form";
        case JustificationKind::EmpiricalOverflow: return "empirical-overflow";
    }
    return "?";
}

namespace {

LimitPrediction origin_verdict(JustificationKind kind, std::string detail) {
    return {LimitOutcome::ConvergesToOrigin, kind, std::move(detail), std::nullopt};
}

LimitPrediction diverge_verdict(JustificationKind kind, std::string detail) {
    return {LimitOutcome::Diverges, kind, std::move(detail), std::nullopt};
}

struct NonnegScan {
    std::optional<LimitPrediction> fired;
    bool overflowed = false;  // a bounded search left the norm cap
};

// Sufficient conditions for a nonnegative start, tried in order:
// contraction region, shell defect search, product-dip search,
// self-reproduction excess. No verdict when t has a negative coordinate.
NonnegScan scan_nonneg(const HemophiliaParams& p, const State4& t,
                       const PredictorConfig& cfg) {
    NonnegScan res;
    if (!all_nonneg(t)) return res;
    const double tol = cfg.boundary_tol;

    if (pair_product(t) < 4.0 - tol) {
        res.fired = origin_verdict(JustificationKind::SumContraction,
                                   "sum-contraction");
        return res;
    }
    if (coordinate_sum(t) <= 4.0 + tol) {
        State4 s = t;
        for (int k = 0; k <= cfg.k_max; ++k) {
            if (std::fabs(boundary_defect(p, s)) > tol) {
                char buf[48];
                std::snprintf(buf, sizeof buf, "boundary-defect(k=%d)", k);
                res.fired = origin_verdict(JustificationKind::BoundaryDefect, buf);
                return res;
            }
            s = apply(p, s);
            if (!is_finite(s)) break;  // cannot happen on the bounded shell
        }
        return res;
    }
    // Coordinate sum above 4: search for a dip below the contraction
    // threshold before testing the growth condition.
    State4 s = t;
    for (int k = 0; k <= cfg.k_max; ++k) {
        if (pair_product(s) < 4.0 - tol) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "product-dip(k=%d)", k);
            res.fired = origin_verdict(JustificationKind::ProductDip, buf);
            return res;
        }
        s = apply(p, s);
        if (!is_finite(s) || max_norm(s) > cfg.max_norm) {
            res.overflowed = true;
            break;
        }
    }
    if (max_self_reproduction(p, t) > 1.0 + tol) {
        res.fired = diverge_verdict(JustificationKind::SelfReproduction,
                                    "self-reproduction");
        res.overflowed = false;
        return res;
    }
    return res;
}

// Closed-form decision for starts on the invariant planes (any sign).
// Null when t is not on a supported plane or the parameter conditions for
// that plane fail.
std::optional<LimitPrediction> axis_decision(const HemophiliaParams& p,
                                             const State4& t, double tol) {
    // One-step-to-zero sets.
    if ((t.x == 0 && t.y == 0) || (t.u == 0 && t.v == 0)) {
        return origin_verdict(JustificationKind::AxisClosedForm,
                              "axis-closed-form(one-step-zero)");
    }
    auto decide = [&](double q, const State4& fp,
                      const char* plane) -> LimitPrediction {
        const double aq = std::fabs(q);
        if (aq < 1.0 - tol) {
            return origin_verdict(JustificationKind::AxisClosedForm,
                                  std::string("axis-closed-form(") + plane + ")");
        }
        if (aq <= 1.0 + tol) {
            return {LimitOutcome::ConvergesToPoint, JustificationKind::AxisClosedForm,
                    std::string("axis-closed-form(") + plane + ")", fp};
        }
        return diverge_verdict(JustificationKind::AxisClosedForm,
                               std::string("axis-closed-form(") + plane + ")");
    };
    if (t.y == 0 && t.v == 0) {
        if (p.a1 <= kExistenceTol || p.a1 >= 1.0 - kExistenceTol) {
            // One factor of the pairing is certain; the plane collapses to
            // a single coordinate and then to zero.
            return origin_verdict(JustificationKind::AxisClosedForm,
                                  "axis-closed-form(xu,degenerate)");
        }
        return decide(p.a1 * p.a2 * t.x * t.u,
                      State4{1.0 / p.a2, 0.0, 1.0 / p.a1, 0.0}, "xu");
    }
    if (t.x == 0 && t.u == 0) {
        if (std::fabs(p.d2) > kExistenceTol) return std::nullopt;
        if (p.d1 <= kExistenceTol || p.d3 <= kExistenceTol) {
            return origin_verdict(JustificationKind::AxisClosedForm,
                                  "axis-closed-form(yv,degenerate)");
        }
        return decide(p.d1 * p.d3 * t.y * t.v,
                      State4{0.0, 1.0 / p.d3, 0.0, 1.0 / p.d1}, "yv");
    }
    if (t.x == 0 && t.v == 0) {
        if (std::fabs(p.b1) > kExistenceTol || std::fabs(p.b4) > kExistenceTol)
            return std::nullopt;
        if (p.b2 <= kExistenceTol || p.b3 <= kExistenceTol) {
            return origin_verdict(JustificationKind::AxisClosedForm,
                                  "axis-closed-form(yu,degenerate)");
        }
        return decide(p.b2 * p.b3 * t.y * t.u,
                      State4{0.0, 1.0 / p.b3, 1.0 / p.b2, 0.0}, "yu");
    }
    return std::nullopt;
}

}  // namespace

LimitPrediction predict_limit(const HemophiliaParams& p, const State4& t,
                              const PredictorConfig& cfg) {
    require_valid(p);
    if (!is_finite(t)) throw Error("predict_limit requires a finite state");

    bool overflow_seen = false;

    NonnegScan direct = scan_nonneg(p, t, cfg);
    if (direct.fired) return *direct.fired;
    overflow_seen |= direct.overflowed;

    // Sign-structured starts map into the nonnegative orthant after one
    // step (all-nonpositive) or two (mixed-sign quadrants); the orbit tail
    // decides for the start.
    const char* quadrant = nullptr;
    int shifts = 0;
    if (all_nonpos(t)) {
        quadrant = "N";
        shifts = 1;
    } else if (females_nonpos_males_nonneg(t)) {
        quadrant = "N0";
        shifts = 2;
    } else if (females_nonneg_males_nonpos(t)) {
        quadrant = "N1";
        shifts = 2;
    }
    if (quadrant != nullptr) {
        State4 s = t;
        bool ok = true;
        for (int i = 0; i < shifts; ++i) {
            s = apply(p, s);
            if (!is_finite(s)) {
                overflow_seen = true;
                ok = false;
                break;
            }
        }
        if (ok) {
            NonnegScan shifted = scan_nonneg(p, s, cfg);
            if (shifted.fired) {
                LimitPrediction out = *shifted.fired;
                out.kind = JustificationKind::SignRegion;
                out.detail =
                    std::string("sign-region(") + quadrant + ")+" + out.detail;
                return out;
            }
            overflow_seen |= shifted.overflowed;
        }
    }

    if (auto axis = axis_decision(p, t, cfg.boundary_tol)) return *axis;

    if (overflow_seen) {
        // Observed escape past the norm cap during a bounded search; not
        // backed by a sufficient condition.
        return diverge_verdict(JustificationKind::EmpiricalOverflow,
                               "empirical-overflow");
    }
    return {LimitOutcome::Unknown, JustificationKind::None, "", std::nullopt};
}

LimitPrediction predict_limit_general(const GeneralOperator& op, const StateN& t,
                                      const PredictorConfig& cfg) {
    require_valid(op);
    if (t.x.size() != op.eta() || t.y.size() != op.nu()) {
        throw DimensionMismatchError("state does not match operator dimensions");
    }
    for (double c : t.x)
        if (c < 0) throw NegativeCoordinateError("negative female coordinate");
    for (double c : t.y)
        if (c < 0) throw NegativeCoordinateError("negative male coordinate");

    const double tol = cfg.boundary_tol;
    if (coordinate_sum(t) < 4.0 - tol) {
        return origin_verdict(JustificationKind::SumContraction, "sum-contraction");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < op.eta(); ++i) {
        for (std::size_t l = 0; l < op.nu(); ++l) {
            best = std::max(best, op.pf(i, l, i) * op.pm(i, l, l) * t.x[i] * t.y[l]);
        }
    }
    if (best > 1.0 + tol) {
        return diverge_verdict(JustificationKind::SelfReproduction,
                               "self-reproduction");
    }
    return {LimitOutcome::Unknown, JustificationKind::None, "", std::nullopt};
}

namespace {

// q^(2^(n-1)) by repeated squaring; n >= 1.
double tower_power(double q, int n) {
    double pw = q;
    for (int i = 1; i < n; ++i) pw *= pw;
    return pw;
}

}  // namespace

std::pair<State4, LimitPrediction> closed_form_axis_trajectory(
    const HemophiliaParams& p, const State4& t0, int n) {
    require_valid(p);
    if (n < 0) throw Error("step count must be nonnegative");

    const double tol = 1e-12;
    enum class Plane { XU, YV, YU };
    Plane plane;
    if (t0.y == 0 && t0.v == 0) {
        plane = Plane::XU;
    } else if (t0.x == 0 && t0.u == 0) {
        if (std::fabs(p.d2) > kExistenceTol) {
            throw ParameterConditionError(
                "closed form on the (0,y,0,v) plane requires d2 = 0");
        }
        plane = Plane::YV;
    } else if (t0.x == 0 && t0.v == 0) {
        if (std::fabs(p.b1) > kExistenceTol || std::fabs(p.b4) > kExistenceTol) {
            throw ParameterConditionError(
                "closed form on the (0,y,u,0) plane requires b1 = b4 = 0");
        }
        plane = Plane::YU;
    } else {
        throw NotOnSupportedSubspaceError(
            "state is not on a closed-form invariant plane");
    }

    // First/second closed-form coefficients and the pairing product.
    double g1, g2, w;
    switch (plane) {
        case Plane::XU:
            g1 = p.a1;
            g2 = p.a2;
            w = t0.x * t0.u;
            break;
        case Plane::YV:
            g1 = p.d1;
            g2 = p.d3;
            w = t0.y * t0.v;
            break;
        case Plane::YU:
            g1 = p.b2;
            g2 = p.b3;
            w = t0.y * t0.u;
            break;
    }

    auto place = [&](double first, double second) {
        switch (plane) {
            case Plane::XU: return State4{first, 0.0, second, 0.0};
            case Plane::YV: return State4{0.0, first, 0.0, second};
            case Plane::YU: return State4{0.0, first, second, 0.0};
        }
        return State4{};
    };

    const bool degenerate = g1 <= kExistenceTol || g2 <= kExistenceTol ||
                            g1 >= 1.0 - kExistenceTol || g2 >= 1.0 - kExistenceTol;
    State4 sn;
    LimitPrediction pred;
    if (degenerate) {
        // One certain coefficient: the first step lands on a coordinate
        // axis with zero partner, the second step is exactly zero.
        if (n == 0) {
            sn = t0;
        } else if (n == 1) {
            sn = g1 >= 1.0 - kExistenceTol ? place(w, 0.0) : place(0.0, w);
        } else {
            sn = State4{0, 0, 0, 0};
        }
        pred = LimitPrediction{LimitOutcome::ConvergesToOrigin,
                               JustificationKind::AxisClosedForm,
                               "axis-closed-form(degenerate)", std::nullopt};
        return {sn, pred};
    }

    const double q = g1 * g2 * w;
    if (n == 0) {
        sn = t0;
    } else {
        const double pw = tower_power(q, n);
        sn = place(pw / g2, pw / g1);
    }
    const double aq = std::fabs(q);
    if (aq < 1.0 - tol) {
        pred = LimitPrediction{LimitOutcome::ConvergesToOrigin,
                               JustificationKind::AxisClosedForm,
                               "axis-closed-form", std::nullopt};
    } else if (aq <= 1.0 + tol) {
        pred = LimitPrediction{LimitOutcome::ConvergesToPoint,
                               JustificationKind::AxisClosedForm,
                               "axis-closed-form", place(1.0 / g2, 1.0 / g1)};
    } else {
        pred = LimitPrediction{LimitOutcome::Diverges,
                               JustificationKind::AxisClosedForm,
                               "axis-closed-form", std::nullopt};
    }
    return {sn, pred};
}

const char* to_string(SimOutcomeKind k) {
    switch (k) {
        case SimOutcomeKind::Origin: return "Origin";
        case SimOutcomeKind::Point: return "Point";
        case SimOutcomeKind::Blowup: return "Blowup";
        case SimOutcomeKind::Undecided: return "Undecided";
    }
    return "?";
}

SimOutcome simulate_until(const HemophiliaParams& p, const State4& t0,
                          int max_steps, const IterationCaps& caps) {
    Trajectory<State4> tr = iterate(p, t0, max_steps, caps);
    SimOutcome out;
    out.last = tr.last();
    out.steps = tr.steps();
    switch (tr.termination) {
        case Termination::ConvergedToOrigin: out.kind = SimOutcomeKind::Origin; break;
        case Termination::ConvergedToPoint: out.kind = SimOutcomeKind::Point; break;
        case Termination::Overflowed: out.kind = SimOutcomeKind::Blowup; break;
        case Termination::CapReached: out.kind = SimOutcomeKind::Undecided; break;
    }
    return out;
}

}  // namespace gonodyn
