#include <cmath>
#include <string>

#include "doctest.h"
#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"
#include "gonodyn/limits.hpp"
#include "gonodyn/params.hpp"
#include "support.hpp"

using namespace gonodyn;
using testsupport::Rng;

namespace {

// Parameters whose boundary defect vanishes identically: a1 = c1 = 1/2,
// b1 + b2 = 1/2, d1 = 1/2. Orbits on the shell sum = 4 stay on it.
HemophiliaParams shell_params() {
    HemophiliaParams p;
    p.a1 = p.a2 = 0.5;
    p.c1 = p.c2 = 0.5;
    p.b1 = p.b2 = p.b3 = p.b4 = 0.25;
    p.d1 = 0.5;
    p.d2 = 0.25;
    p.d3 = 0.25;
    return p;
}

}  // namespace

TEST_CASE("region membership at pinned states") {
    HemophiliaParams p = classical_params();

    Region r = classify_region(State4{3, 0, 3, 0}, p);
    CHECK(r.P);
    CHECK(r.I);
    CHECK(r.J);
    CHECK_FALSE(r.P0);
    CHECK_FALSE(r.q_level.has_value());
    REQUIRE(r.delta0.has_value());
    CHECK(*r.delta0);
    CHECK_FALSE(r.O);
    CHECK_FALSE(r.N);

    r = classify_region(State4{0, 0, 5, 7}, p);
    CHECK(r.O);
    CHECK(r.P);
    CHECK(r.P0);  // (x+y)(u+v) = 0 < 4

    r = classify_region(State4{-1, -1, -1, -1}, p);
    CHECK(r.N);
    CHECK_FALSE(r.P);
    CHECK_FALSE(r.N0);
    CHECK_FALSE(r.N1);

    r = classify_region(State4{1, 1, 1, 1}, p);
    CHECK(r.P);
    CHECK_FALSE(r.P0);  // product is exactly 4
    REQUIRE(r.q_level.has_value());
    CHECK(*r.q_level == 4.0);
    REQUIRE(r.delta0.has_value());
    CHECK_FALSE(*r.delta0);

    r = classify_region(State4{0, 0, 0, 0}, p);
    CHECK(r.O);
    CHECK(r.I);
    CHECK(r.J);
    CHECK(r.P);
    CHECK(r.N);
    CHECK(r.N0);
    CHECK(r.N1);
    CHECK(*r.q_level == 0.0);

    r = classify_region(State4{-2, 0, 3, 1}, p);
    CHECK(r.N0);
    CHECK_FALSE(r.N1);
    r = classify_region(State4{2, 0, -3, -1}, p);
    CHECK(r.N1);
    CHECK_FALSE(r.N0);
}

TEST_CASE("region flags are mutually consistent on random states") {
    Rng rng(20260825);
    HemophiliaParams p = classical_params();
    for (int k = 0; k < 500; ++k) {
        State4 t = testsupport::random_state(rng, -5.0, 5.0);
        Region r = classify_region(t, p);
        if (r.P0) CHECK(r.P);
        if (r.J) CHECK(r.I);
        CHECK(r.q_level.has_value() == (r.P && coordinate_sum(t) <= 4.0));
        if (r.q_level) CHECK(*r.q_level == coordinate_sum(t));
        if (r.delta0 && *r.delta0) {
            CHECK(r.P);
            CHECK(coordinate_sum(t) > 4.0);
            double m = std::max({p.a1 * p.a2 * t.x * t.u, p.b2 * p.b3 * t.y * t.u,
                                 p.d1 * p.d3 * t.y * t.v});
            CHECK(m > 1.0);
        }
        CHECK(r.O == ((t.x == 0 && t.y == 0) || (t.u == 0 && t.v == 0)));
        CHECK(r.I == (t.y == 0 && t.v == 0));
    }
}

TEST_CASE("region names render compactly") {
    Region r = classify_region(State4{1, 1, 1, 1}, classical_params());
    std::string s = r.to_string();
    CHECK(s.find("P") != std::string::npos);
    CHECK(s.find("Q(4)") != std::string::npos);
    Region blank{};
    CHECK(blank.none());
    CHECK(blank.to_string() == "None");
}

TEST_CASE("limit prediction: contraction inside the open sublevel set") {
    LimitPrediction pr = predict_limit(classical_params(), State4{1.0, 0.5, 1.0, 0.5});
    CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);
    CHECK(pr.kind == JustificationKind::SumContraction);
}

TEST_CASE("limit prediction: boundary defect on the critical shell") {
    LimitPrediction pr = predict_limit(classical_params(), State4{1, 1, 1, 1});
    CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);
    CHECK(pr.kind == JustificationKind::BoundaryDefect);
    CHECK(pr.detail == "boundary-defect(k=0)");
}

TEST_CASE("limit prediction: escape by self-reproduction") {
    LimitPrediction pr = predict_limit(classical_params(), State4{3, 0, 3, 0});
    CHECK(pr.outcome == LimitOutcome::Diverges);
    bool escape = pr.kind == JustificationKind::ProductDip ||
                  pr.kind == JustificationKind::SelfReproduction;
    CHECK(escape);
}

TEST_CASE("limit prediction: sign regions route through the image") {
    SUBCASE("all-negative cone lands in the positive cone") {
        LimitPrediction pr = predict_limit(classical_params(), State4{-1, -1, -1, -1});
        CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);
        CHECK(pr.kind == JustificationKind::SignRegion);
        CHECK(pr.detail.find("sign-region(N)") == 0);
    }
    SUBCASE("negative-female cone") {
        LimitPrediction pr = predict_limit(classical_params(), State4{-5, 0, 5, 0});
        CHECK(pr.outcome == LimitOutcome::Diverges);
        CHECK(pr.detail.find("sign-region(N0)") == 0);
    }
    SUBCASE("negative-male cone") {
        LimitPrediction pr = predict_limit(classical_params(), State4{5, 0, -5, 0});
        CHECK(pr.outcome == LimitOutcome::Diverges);
        CHECK(pr.detail.find("sign-region(N1)") == 0);
    }
}

TEST_CASE("limit prediction: closed forms on the invariant planes") {
    SUBCASE("axis start that lands exactly on the rest point") {
        LimitPrediction pr = predict_limit(classical_params(), State4{4, 0, 1, 0});
        CHECK(pr.outcome == LimitOutcome::ConvergesToPoint);
        CHECK(pr.kind == JustificationKind::AxisClosedForm);
        REQUIRE(pr.point.has_value());
        CHECK(max_norm_diff(*pr.point, State4{2, 0, 2, 0}) <= 1e-12);
    }
    SUBCASE("one-step annihilation") {
        // nonnegative one-sex states fire the contraction branch instead
        LimitPrediction pr = predict_limit(classical_params(), State4{2, -7, 0, 0});
        CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);
        CHECK(pr.kind == JustificationKind::AxisClosedForm);
    }
    SUBCASE("negative axis start with unit product") {
        // (x, 0, u, 0) with a1 a2 x u = -1 alternates but the square lands fixed
        LimitPrediction pr = predict_limit(classical_params(), State4{-4, 0, 1, 0});
        CHECK(pr.outcome == LimitOutcome::ConvergesToPoint);
        REQUIRE(pr.point.has_value());
        CHECK(max_norm_diff(*pr.point, State4{2, 0, 2, 0}) <= 1e-12);
    }
}

TEST_CASE("limit prediction: undecidable shell orbits come back Unknown") {
    HemophiliaParams p = shell_params();
    REQUIRE(validate(p).ok());
    LimitPrediction pr = predict_limit(p, State4{1, 1, 1, 1});
    CHECK(pr.outcome == LimitOutcome::Unknown);
    CHECK(pr.kind == JustificationKind::None);

    pr = predict_limit(p, State4{0.5, 1.5, 2.0, 0.0});
    CHECK(pr.outcome == LimitOutcome::Unknown);
}

TEST_CASE("limit prediction: fixed points themselves are Unknown unless axis-bound") {
    HemophiliaParams p = w0_params();
    LimitPrediction pr = predict_limit(p, State4{1, 2, 2, -0.5});
    CHECK(pr.outcome == LimitOutcome::Unknown);
}

TEST_CASE("limit prediction rejects invalid input") {
    HemophiliaParams bad = classical_params();
    bad.a1 = 0.9;
    CHECK_THROWS_AS(predict_limit(bad, State4{1, 1, 1, 1}), InvalidParamsError);
    State4 nan{std::nan(""), 0, 0, 0};
    CHECK_THROWS_AS(predict_limit(classical_params(), nan), Error);
}

TEST_CASE("shell states with a carrier deficit drain to the origin") {
    // On the classical shell x+y = u+v = 2 the defect fires within two steps
    // whenever y v > 0.
    Rng rng(73);
    HemophiliaParams p = classical_params();
    std::uniform_real_distribution<double> split(0.05, 0.95);
    for (int k = 0; k < 200; ++k) {
        double fy = split(rng), mv = split(rng);
        State4 t{2 * (1 - fy), 2 * fy, 2 * (1 - mv), 2 * mv};
        LimitPrediction pr = predict_limit(p, t);
        CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);
        CHECK(pr.kind == JustificationKind::BoundaryDefect);
        SimOutcome sim = simulate_until(p, t, 2000);
        CHECK(sim.kind == SimOutcomeKind::Origin);
    }
}

TEST_CASE("predictions are sound against simulation") {
    Rng rng(79);
    int decided = 0;
    for (int k = 0; k < 600; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        State4 t;
        switch (k % 4) {
            case 0: t = testsupport::random_nonneg_with_sum(rng, 3.9 * (k % 7) / 6.0); break;
            case 1: t = testsupport::random_nonneg_with_sum(rng, 4.0 + (k % 11)); break;
            case 2: t = testsupport::random_state(rng, -3.0, 3.0); break;
            default: t = testsupport::random_state(rng, -0.5, 0.5); break;
        }
        LimitPrediction pr = predict_limit(p, t);
        if (pr.outcome == LimitOutcome::Unknown) continue;
        ++decided;
        SimOutcome sim = simulate_until(p, t, 5000);
        CAPTURE(k);
        CAPTURE(pr.detail);
        switch (pr.outcome) {
            case LimitOutcome::ConvergesToOrigin:
                CHECK(sim.kind == SimOutcomeKind::Origin);
                break;
            case LimitOutcome::Diverges:
                CHECK(sim.kind == SimOutcomeKind::Blowup);
                break;
            case LimitOutcome::ConvergesToPoint: {
                REQUIRE(sim.kind == SimOutcomeKind::Point);
                REQUIRE(pr.point.has_value());
                CHECK(max_norm_diff(sim.last, *pr.point) <= 1e-6);
                break;
            }
            default: break;
        }
    }
    CHECK(decided > 300);
}

TEST_CASE("closed-form powers on the carrier-free plane") {
    Rng rng(83);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        State4 t0{coord(rng), 0.0, coord(rng), 0.0};
        auto tr = iterate(p, t0, 6, IterationCaps{1e300, 0.0, 0.0});
        for (int n = 0; n <= 6 && n < static_cast<int>(tr.states.size()); ++n) {
            auto [tn, pred] = closed_form_axis_trajectory(p, t0, n);
            double scale = std::max(1.0, max_norm(tr.states[n]));
            CHECK(max_norm_diff(tn, tr.states[n]) <= 1e-10 * scale);
        }
        auto [t1, pred] = closed_form_axis_trajectory(p, t0, 1);
        double q = p.a1 * p.a2 * t0.x * t0.u;
        if (std::abs(q) < 1.0 - 1e-12) CHECK(pred.outcome == LimitOutcome::ConvergesToOrigin);
        if (std::abs(q) > 1.0 + 1e-12) CHECK(pred.outcome == LimitOutcome::Diverges);
    }
}

TEST_CASE("closed-form powers on the carrier axis and mixed plane") {
    Rng rng(89);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);

        HemophiliaParams pd = p;
        pd.d1 += pd.d2 / 2;
        pd.d3 += pd.d2 / 2;
        pd.d2 = 0.0;
        State4 t0{0.0, coord(rng), 0.0, coord(rng)};
        auto tr = iterate(pd, t0, 6, IterationCaps{1e300, 0.0, 0.0});
        for (int n = 0; n <= 6 && n < static_cast<int>(tr.states.size()); ++n) {
            auto [tn, pred] = closed_form_axis_trajectory(pd, t0, n);
            double scale = std::max(1.0, max_norm(tr.states[n]));
            CHECK(max_norm_diff(tn, tr.states[n]) <= 1e-10 * scale);
        }

        HemophiliaParams pb = p;
        pb.b2 += pb.b1 / 2 + pb.b4 / 2;
        pb.b3 += pb.b1 / 2 + pb.b4 / 2;
        pb.b1 = 0.0;
        pb.b4 = 0.0;
        State4 s0{0.0, coord(rng), coord(rng), 0.0};
        auto trb = iterate(pb, s0, 6, IterationCaps{1e300, 0.0, 0.0});
        for (int n = 0; n <= 6 && n < static_cast<int>(trb.states.size()); ++n) {
            auto [sn, pred] = closed_form_axis_trajectory(pb, s0, n);
            double scale = std::max(1.0, max_norm(trb.states[n]));
            CHECK(max_norm_diff(sn, trb.states[n]) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("closed-form powers at degenerate coefficients") {
    HemophiliaParams p = classical_params();
    p.a1 = 0.0;
    p.a2 = 1.0;
    State4 t0{1.5, 0.0, 2.0, 0.0};

    auto [t1, pr1] = closed_form_axis_trajectory(p, t0, 1);
    CHECK(max_norm_diff(t1, apply(p, t0)) == 0.0);
    CHECK(t1.x == 0.0);
    CHECK(t1.u == 3.0);

    auto [t2, pr2] = closed_form_axis_trajectory(p, t0, 2);
    CHECK(max_norm(t2) == 0.0);
    CHECK(pr2.outcome == LimitOutcome::ConvergesToOrigin);

    p.a1 = 1.0;
    p.a2 = 0.0;
    auto [s2, pr3] = closed_form_axis_trajectory(p, t0, 2);
    CHECK(max_norm(s2) == 0.0);
}

TEST_CASE("closed-form powers demand the right plane and coefficients") {
    HemophiliaParams p = classical_params();
    // not on any supported plane
    CHECK_THROWS_AS(closed_form_axis_trajectory(p, State4{1, 2, 3, 0}, 3),
                    NotOnSupportedSubspaceError);
    // carrier axis requires d2 = 0
    CHECK_THROWS_AS(closed_form_axis_trajectory(p, State4{0, 1, 0, 1}, 3),
                    ParameterConditionError);
    // mixed plane requires b1 = b4 = 0
    CHECK_THROWS_AS(closed_form_axis_trajectory(p, State4{0, 1, 1, 0}, 3),
                    ParameterConditionError);
}

TEST_CASE("boundary landing: unit product parks on the rest point") {
    auto [t1, pred] = closed_form_axis_trajectory(classical_params(), State4{4, 0, 1, 0}, 1);
    CHECK(t1.x == 2.0);
    CHECK(t1.u == 2.0);
    CHECK(pred.outcome == LimitOutcome::ConvergesToPoint);
    REQUIRE(pred.point.has_value());
    CHECK(max_norm_diff(*pred.point, State4{2, 0, 2, 0}) == 0.0);
}

TEST_CASE("simulation oracle maps terminations to outcomes") {
    HemophiliaParams p = classical_params();
    CHECK(simulate_until(p, State4{1, 1, 1, 1}, 500).kind == SimOutcomeKind::Origin);
    CHECK(simulate_until(p, State4{3, 0, 3, 0}, 500).kind == SimOutcomeKind::Blowup);
    SimOutcome s = simulate_until(p, State4{2, 0, 2, 0}, 500);
    CHECK(s.kind == SimOutcomeKind::Point);
    CHECK(max_norm_diff(s.last, State4{2, 0, 2, 0}) == 0.0);
}

TEST_CASE("general-operator predictor on embedded states") {
    HemophiliaParams p = classical_params();
    GeneralOperator op = hemophilia_to_general(p);

    StateN small = testsupport::embed_state(State4{1.0, 0.5, 1.0, 0.5});
    LimitPrediction pr = predict_limit_general(op, small);
    CHECK(pr.outcome == LimitOutcome::ConvergesToOrigin);

    StateN big = testsupport::embed_state(State4{3, 0, 3, 0});
    pr = predict_limit_general(op, big);
    CHECK(pr.outcome == LimitOutcome::Diverges);

    StateN shell = testsupport::embed_state(State4{1, 1, 1, 1});
    pr = predict_limit_general(op, shell);
    CHECK(pr.outcome == LimitOutcome::Unknown);

    StateN neg = testsupport::embed_state(State4{-1, 1, 1, 1});
    CHECK_THROWS_AS(predict_limit_general(op, neg), NegativeCoordinateError);

    StateN wrong{{1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(predict_limit_general(op, wrong), DimensionMismatchError);
}

TEST_CASE("general and four-type predictors agree where both decide") {
    Rng rng(97);
    int diverge_checked = 0;
    for (int k = 0; k < 400; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        GeneralOperator op = hemophilia_to_general(p);
        State4 t = testsupport::random_nonneg_with_sum(rng, (k % 2) ? 3.5 : 8.0);
        LimitPrediction g = predict_limit_general(op, testsupport::embed_state(t));
        LimitPrediction h = predict_limit(p, t);
        if (g.outcome == LimitOutcome::ConvergesToOrigin)
            CHECK(h.outcome == LimitOutcome::ConvergesToOrigin);
        if (g.outcome == LimitOutcome::Diverges) {
            CHECK(h.outcome == LimitOutcome::Diverges);
            ++diverge_checked;
        }
    }
    CHECK(diverge_checked > 0);
}
