#pragma once

#include <random>
#include <vector>

#include "gonodyn/evolution.hpp"
#include "gonodyn/general.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/spectral.hpp"
#include "gonodyn/state.hpp"

namespace testsupport {

using gonodyn::GeneralOperator;
using gonodyn::HemophiliaParams;
using gonodyn::State4;
using gonodyn::StateN;

using Rng = std::mt19937_64;

// Probability vector by normalizing uniforms; entries bounded away from 0
// when lo > 0 (lo is a pre-normalization floor).
inline std::vector<double> random_simplex(Rng& rng, int n, double lo = 0.0) {
    std::uniform_real_distribution<double> dist(lo, 1.0);
    std::vector<double> w(n);
    double sum = 0.0;
    for (double& c : w) {
        c = dist(rng);
        sum += c;
    }
    for (double& c : w) c /= sum;
    return w;
}

inline HemophiliaParams random_params(Rng& rng) {
    HemophiliaParams p;
    auto a = random_simplex(rng, 2, 0.02);
    auto c = random_simplex(rng, 2, 0.02);
    auto b = random_simplex(rng, 4, 0.02);
    auto d = random_simplex(rng, 3, 0.02);
    p.a1 = a[0];
    p.a2 = a[1];
    p.c1 = c[0];
    p.c2 = c[1];
    p.b1 = b[0];
    p.b2 = b[1];
    p.b3 = b[2];
    p.b4 = b[3];
    p.d1 = d[0];
    p.d2 = d[1];
    p.d3 = d[2];
    return p;
}

inline State4 random_state(Rng& rng, double lo = -3.0, double hi = 3.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return State4{dist(rng), dist(rng), dist(rng), dist(rng)};
}

// Nonnegative state with coordinate sum exactly total * (random split).
inline State4 random_nonneg_with_sum(Rng& rng, double total) {
    auto w = random_simplex(rng, 4);
    return State4{w[0] * total, w[1] * total, w[2] * total, w[3] * total};
}

inline GeneralOperator random_general(Rng& rng, std::size_t eta, std::size_t nu) {
    GeneralOperator op(eta, nu);
    for (std::size_t i = 0; i < eta; ++i) {
        for (std::size_t r = 0; r < nu; ++r) {
            auto w = random_simplex(rng, static_cast<int>(eta + nu), 0.02);
            for (std::size_t j = 0; j < eta; ++j) op.pf(i, r, j) = w[j];
            for (std::size_t l = 0; l < nu; ++l) op.pm(i, r, l) = w[eta + l];
        }
    }
    return op;
}

inline StateN embed_state(const State4& t) {
    return StateN{{t.x, t.y}, {t.u, t.v}};
}

// Central differences with step h; exact for quadratics up to rounding.
inline gonodyn::Jacobian4 fd_jacobian(const HemophiliaParams& p, const State4& s,
                                      double h = 1e-5) {
    gonodyn::Jacobian4 J;
    for (int j = 0; j < 4; ++j) {
        State4 plus = s, minus = s;
        plus[j] += h;
        minus[j] -= h;
        State4 wp = apply(p, plus), wm = apply(p, minus);
        for (int i = 0; i < 4; ++i) {
            J[i][j] = (wp[i] - wm[i]) / (2.0 * h);
        }
    }
    return J;
}

}  // namespace testsupport
