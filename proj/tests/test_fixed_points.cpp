#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"
#include "gonodyn/fixed_points.hpp"
#include "gonodyn/params.hpp"
#include "support.hpp"

using namespace gonodyn;
using testsupport::Rng;

namespace {

const FixedPoint* find_form(const std::vector<FixedPoint>& fps, FixedPointForm form) {
    for (const auto& fp : fps)
        if (fp.form == form) return &fp;
    return nullptr;
}

}  // namespace

TEST_CASE("fixed point residual at a hand-computed state") {
    // W(1,1,1,1) = (0.75, 13/12, 19/12, 7/12); largest coordinate gap is 7/12.
    double r = residual(classical_params(), State4{1, 1, 1, 1});
    CHECK(r == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("closed-form fixed points of the classical preset") {
    auto fps = closed_form_fixed_points(classical_params());
    REQUIRE(find_form(fps, FixedPointForm::Origin) != nullptr);
    const FixedPoint* ba = find_form(fps, FixedPointForm::BothAxes);
    REQUIRE(ba != nullptr);
    CHECK(max_norm_diff(ba->state, State4{2, 0, 2, 0}) <= 1e-15);
    CHECK(ba->residual <= 1e-12);
    // d2 = 1/3 and b1 = 1/4, so the other two axis families do not exist.
    CHECK(find_form(fps, FixedPointForm::CarrierAxis) == nullptr);
    CHECK(find_form(fps, FixedPointForm::MixedAxis) == nullptr);
}

TEST_CASE("closed-form fixed points of the w0 preset") {
    auto fps = closed_form_fixed_points(w0_params());
    CHECK(find_form(fps, FixedPointForm::Origin) != nullptr);
    const FixedPoint* ba = find_form(fps, FixedPointForm::BothAxes);
    REQUIRE(ba != nullptr);
    CHECK(max_norm_diff(ba->state, State4{2, 0, 2, 0}) <= 1e-15);
    const FixedPoint* ma = find_form(fps, FixedPointForm::MixedAxis);
    REQUIRE(ma != nullptr);
    CHECK(max_norm_diff(ma->state, State4{0, 2, 2, 0}) <= 1e-15);
    CHECK(ma->residual <= 1e-12);
    CHECK(find_form(fps, FixedPointForm::CarrierAxis) == nullptr);  // d2 = 1/2
}

TEST_CASE("carrier-axis family appears exactly when d2 = 0") {
    HemophiliaParams p = classical_params();
    p.d1 = 0.4;
    p.d2 = 0.0;
    p.d3 = 0.6;
    auto fps = closed_form_fixed_points(p);
    const FixedPoint* ca = find_form(fps, FixedPointForm::CarrierAxis);
    REQUIRE(ca != nullptr);
    CHECK(max_norm_diff(ca->state, State4{0.0, 1.0 / 0.6, 0.0, 2.5}) <= 1e-15);
    CHECK(ca->residual <= 1e-12);
}

TEST_CASE("mixed-axis family appears exactly when b1 = b4 = 0") {
    HemophiliaParams p = classical_params();
    p.b1 = 0.0;
    p.b2 = 0.3;
    p.b3 = 0.7;
    p.b4 = 0.0;
    auto fps = closed_form_fixed_points(p);
    const FixedPoint* ma = find_form(fps, FixedPointForm::MixedAxis);
    REQUIRE(ma != nullptr);
    CHECK(max_norm_diff(ma->state, State4{0.0, 1.0 / 0.7, 1.0 / 0.3, 0.0}) <= 1e-14);
    CHECK(ma->residual <= 1e-12);
}

TEST_CASE("existence degenerates at the edges of the coefficient range") {
    HemophiliaParams p = classical_params();
    p.a1 = 0.0;
    p.a2 = 1.0;
    auto fps = closed_form_fixed_points(p);
    CHECK(find_form(fps, FixedPointForm::BothAxes) == nullptr);

    p.a1 = 1.0;
    p.a2 = 0.0;
    fps = closed_form_fixed_points(p);
    CHECK(find_form(fps, FixedPointForm::BothAxes) == nullptr);
}

TEST_CASE("every reported closed-form point is fixed to machine accuracy") {
    Rng rng(20260825);
    int seen[5] = {0, 0, 0, 0, 0};
    for (int k = 0; k < 300; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        // Force the degenerate families into existence on a rotating basis.
        if (k % 3 == 1) {
            p.d1 += p.d2 / 2;
            p.d3 += p.d2 / 2;
            p.d2 = 0.0;
        } else if (k % 3 == 2) {
            p.b2 += p.b1 / 2 + p.b4 / 2;
            p.b3 += p.b1 / 2 + p.b4 / 2;
            p.b1 = 0.0;
            p.b4 = 0.0;
        }
        for (const auto& fp : closed_form_fixed_points(p)) {
            CHECK(fp.residual <= 1e-12);
            CHECK(residual(p, fp.state) <= 1e-12);
            seen[static_cast<int>(fp.form)] += 1;
        }
    }
    // All four closed forms were actually exercised.
    CHECK(seen[static_cast<int>(FixedPointForm::Origin)] == 300);
    CHECK(seen[static_cast<int>(FixedPointForm::BothAxes)] > 0);
    CHECK(seen[static_cast<int>(FixedPointForm::CarrierAxis)] > 0);
    CHECK(seen[static_cast<int>(FixedPointForm::MixedAxis)] > 0);
}

TEST_CASE("Newton search recovers the known interior points of w0") {
    // The interior fixed points of w0 form a curve, so every root found
    // near the two named points is itself a genuine fixed point and the
    // cluster representative can sit anywhere within the dedup radius.
    HemophiliaParams p = w0_params();
    auto found = solve_interior_fixed_points(p);
    REQUIRE_FALSE(found.empty());

    bool has_first = false, has_second = false;
    for (const auto& fp : found) {
        CHECK(fp.form == FixedPointForm::Interior);
        CHECK(fp.residual <= 1e-10);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(fp.state[i]) > 1e-10);
        if (max_norm_diff(fp.state, State4{1, 2, 2, -0.5}) <= 2e-6) has_first = true;
        if (max_norm_diff(fp.state, State4{2, 2, 2, -2.0 / 3.0}) <= 2e-6) has_second = true;
    }
    CHECK(has_first);
    CHECK(has_second);

    SUBCASE("exact seeds are returned exactly") {
        SeedGrid tiny;
        tiny.lo = tiny.hi = 0.0;
        tiny.per_axis = 1;  // lattice collapses to the origin seed
        auto exact = solve_interior_fixed_points(p, tiny);
        REQUIRE(exact.size() == 2);
        CHECK(max_norm_diff(exact[0].state, State4{1, 2, 2, -0.5}) <= 1e-12);
        CHECK(max_norm_diff(exact[1].state, State4{2, 2, 2, -2.0 / 3.0}) <= 1e-12);
        CHECK(exact[0].residual <= 1e-13);
        CHECK(exact[1].residual <= 1e-13);
    }

    SUBCASE("results are sorted and deduplicated") {
        auto lex_less = [](const State4& a, const State4& b) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (a[i] < b[i]) return true;
                if (a[i] > b[i]) return false;
            }
            return false;
        };
        for (std::size_t i = 1; i < found.size(); ++i) {
            CHECK(lex_less(found[i - 1].state, found[i].state));
            CHECK(max_norm_diff(found[i - 1].state, found[i].state) > 1e-6);
        }
    }
}

TEST_CASE("interior search contract holds on random parameters") {
    Rng rng(31);
    for (int k = 0; k < 20; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        SeedGrid grid;
        grid.per_axis = 3;  // keep runtime small
        for (const auto& fp : solve_interior_fixed_points(p, grid)) {
            CHECK(fp.residual <= 1e-10);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(fp.state[i]) > 1e-10);
        }
    }
}

TEST_CASE("classification at the origin and at the classical axis point") {
    HemophiliaParams p = classical_params();

    FixedPoint origin{State4{0, 0, 0, 0}, FixedPointForm::Origin, 0.0, {}, {}};
    StabilityClass so = classify(p, origin);
    CHECK(so.tag == StabilityTag::Attracting);
    for (double m : so.moduli) CHECK(m == 0.0);

    FixedPoint axis{State4{2, 0, 2, 0}, FixedPointForm::BothAxes, 0.0, {}, {}};
    StabilityClass sa = classify(p, axis);
    CHECK(sa.tag == StabilityTag::Nonhyperbolic);
    // moduli {0, 0.5, 1, 2}, ascending
    CHECK(sa.moduli[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(sa.moduli[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sa.moduli[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sa.moduli[3] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("classification rejects states that are not fixed") {
    FixedPoint fake{State4{1, 1, 1, 1}, FixedPointForm::Interior, 0.0, {}, {}};
    CHECK_THROWS_AS(classify(classical_params(), fake), NotAFixedPointError);
}

TEST_CASE("a saddle example away from the bifurcation set") {
    HemophiliaParams p;
    p.a1 = 0.4;
    p.a2 = 0.6;
    p.c1 = 0.5;
    p.c2 = 0.5;
    p.b1 = 0.1;
    p.b2 = 0.2;
    p.b3 = 0.3;
    p.b4 = 0.4;
    p.d1 = p.d2 = p.d3 = 1.0 / 3.0;
    require_valid(p);

    auto fps = closed_form_fixed_points(p);
    const FixedPoint* ba = find_form(fps, FixedPointForm::BothAxes);
    REQUIRE(ba != nullptr);
    StabilityClass s = classify(p, *ba);
    CHECK(s.tag == StabilityTag::Saddle);
}

TEST_CASE("nontrivial fixed points are never attracting or repelling") {
    // The linearization always carries the moduli 0 and 2 (2 need not be
    // the largest: the quadratic-factor pair can exceed it).
    Rng rng(37);
    for (int k = 0; k < 200; ++k) {
        HemophiliaParams p = testsupport::random_params(rng);
        for (auto& fp : closed_form_fixed_points(p)) {
            if (fp.form == FixedPointForm::Origin) continue;
            annotate(p, fp);
            REQUIRE(fp.stability.has_value());
            bool ok = fp.stability->tag == StabilityTag::Saddle ||
                      fp.stability->tag == StabilityTag::Nonhyperbolic;
            CHECK(ok);
            CHECK(fp.stability->moduli[0] <= 1e-8);
            bool has_two = false;
            for (double m : fp.stability->moduli)
                if (std::abs(m - 2.0) <= 1e-8) has_two = true;
            CHECK(has_two);
        }
    }
}

TEST_CASE("interior points of w0 sit on the nonhyperbolic stratum") {
    HemophiliaParams p = w0_params();
    for (State4 t : {State4{1, 2, 2, -0.5}, State4{2, 2, 2, -2.0 / 3.0}}) {
        FixedPoint fp{t, FixedPointForm::Interior, residual(p, t), {}, {}};
        StabilityClass s = classify(p, fp);
        CHECK(s.tag == StabilityTag::Nonhyperbolic);
    }
}
