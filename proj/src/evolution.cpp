#include "gonodyn/evolution.hpp"

namespace gonodyn {

State4 apply(const HemophiliaParams& p, const State4& t) {
    const double xu = t.x * t.u;
    const double xv = t.x * t.v;
    const double yu = t.y * t.u;
    const double yv = t.y * t.v;
    State4 out;
    out.x = p.a1 * xu + p.b1 * yu;
    out.y = p.c1 * xv + p.b2 * yu + p.d1 * yv;
    out.u = p.a2 * xu + p.c2 * xv + p.b3 * yu + p.d2 * yv;
    out.v = p.b4 * yu + p.d3 * yv;
    return out;
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::CapReached: return "CapReached";
        case Termination::ConvergedToOrigin: return "ConvergedToOrigin";
        case Termination::ConvergedToPoint: return "ConvergedToPoint";
        case Termination::Overflowed: return "Overflowed";
    }
    return "?";
}

namespace {

template <class StateT, class Step>
Trajectory<StateT> run(StateT t0, int n, const IterationCaps& caps, Step step) {
    Trajectory<StateT> tr;
    tr.states.push_back(t0);
    if (!is_finite(t0) || max_norm(t0) > caps.max_norm) {
        tr.termination = Termination::Overflowed;
        return tr;
    }
    if (max_norm(t0) < caps.origin_tol) {
        tr.termination = Termination::ConvergedToOrigin;
        return tr;
    }
    for (int k = 0; k < n; ++k) {
        StateT next = step(tr.states.back());
        if (!is_finite(next)) {
            tr.termination = Termination::Overflowed;
            return tr;
        }
        const double nn = max_norm(next);
        const double dd = max_norm_diff(next, tr.states.back());
        tr.states.push_back(next);
        if (nn < caps.origin_tol) {
            tr.termination = Termination::ConvergedToOrigin;
            return tr;
        }
        if (nn > caps.max_norm) {
            tr.termination = Termination::Overflowed;
            return tr;
        }
        if (dd < caps.point_tol) {
            tr.termination = Termination::ConvergedToPoint;
            return tr;
        }
    }
    tr.termination = Termination::CapReached;
    return tr;
}

}  // namespace

Trajectory<State4> iterate(const HemophiliaParams& p, const State4& t0, int n,
                           const IterationCaps& caps) {
    require_valid(p);
    return run<State4>(t0, n, caps, [&](const State4& s) { return apply(p, s); });
}

Trajectory<StateN> iterate(const GeneralOperator& op, const StateN& t0, int n,
                           const IterationCaps& caps) {
    require_valid(op);
    return run<StateN>(t0, n, caps, [&](const StateN& s) { return apply(op, s); });
}

}  // namespace gonodyn
