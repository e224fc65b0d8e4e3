#include "gonodyn/fixed_points.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"

namespace gonodyn {

const char* to_string(FixedPointForm f) {
    switch (f) {
        case FixedPointForm::Origin: return "Origin";
        case FixedPointForm::BothAxes: return "BothAxes";
        case FixedPointForm::CarrierAxis: return "CarrierAxis";
        case FixedPointForm::MixedAxis: return "MixedAxis";
        case FixedPointForm::Interior: return "Interior";
    }
    return "?";
}

double residual(const HemophiliaParams& p, const State4& s) {
    State4 w = apply(p, s);
    if (!is_finite(w)) return std::numeric_limits<double>::infinity();
    return max_norm_diff(w, s);
}

namespace {

bool strictly_interior_unit(double c) {
    return c > kExistenceTol && c < 1.0 - kExistenceTol;
}

FixedPoint make_fp(const HemophiliaParams& p, const State4& s, FixedPointForm f) {
    return FixedPoint{s, f, residual(p, s), std::nullopt, std::nullopt};
}

}  // namespace

std::vector<FixedPoint> closed_form_fixed_points(const HemophiliaParams& p) {
    std::vector<FixedPoint> out;
    out.push_back(make_fp(p, State4{0, 0, 0, 0}, FixedPointForm::Origin));
    if (strictly_interior_unit(p.a1) && strictly_interior_unit(p.a2)) {
        out.push_back(make_fp(p, State4{1.0 / p.a2, 0.0, 1.0 / p.a1, 0.0},
                              FixedPointForm::BothAxes));
    }
    if (std::fabs(p.d2) <= kExistenceTol && strictly_interior_unit(p.d1) &&
        strictly_interior_unit(p.d3)) {
        out.push_back(make_fp(p, State4{0.0, 1.0 / p.d3, 0.0, 1.0 / p.d1},
                              FixedPointForm::CarrierAxis));
    }
    if (std::fabs(p.b1) <= kExistenceTol && std::fabs(p.b4) <= kExistenceTol &&
        strictly_interior_unit(p.b2) && strictly_interior_unit(p.b3)) {
        out.push_back(make_fp(p, State4{0.0, 1.0 / p.b3, 1.0 / p.b2, 0.0},
                              FixedPointForm::MixedAxis));
    }
    return out;
}

std::vector<State4> SeedGrid::default_extra() {
    return {State4{1.0, 2.0, 2.0, -0.5}, State4{2.0, 2.0, 2.0, -2.0 / 3.0}};
}

namespace {

// One damped Newton run on F(s) = W(s) - s. Returns the refined state, or
// nullopt when the linear solve degenerates or progress stalls.
std::optional<State4> newton_from_seed(const HemophiliaParams& p, State4 s,
                                       const NewtonOptions& opt) {
    auto F = [&](const State4& q) {
        State4 w = apply(p, q);
        return State4{w.x - q.x, w.y - q.y, w.u - q.u, w.v - q.v};
    };
    State4 f = F(s);
    if (!is_finite(f)) return std::nullopt;
    double r = max_norm(f);
    for (int it = 0; it < opt.max_iter && r > opt.tol; ++it) {
        Jacobian4 jw = jacobian(p, s);
        Eigen::Matrix4d m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m(i, j) = jw[i][j] - (i == j ? 1.0 : 0.0);
        Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
        if (!lu.isInvertible()) return std::nullopt;
        Eigen::Vector4d rhs(-f.x, -f.y, -f.u, -f.v);
        Eigen::Vector4d delta = lu.solve(rhs);
        if (!delta.allFinite()) return std::nullopt;

        double step = 1.0;
        bool improved = false;
        for (int h = 0; h <= opt.max_halvings; ++h) {
            State4 cand{s.x + step * delta(0), s.y + step * delta(1),
                        s.u + step * delta(2), s.v + step * delta(3)};
            State4 fc = F(cand);
            if (is_finite(fc) && max_norm(fc) < r) {
                s = cand;
                f = fc;
                r = max_norm(fc);
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;  // stalled; accept only if already good enough
    }
    if (r <= opt.accept_residual) return s;
    return std::nullopt;
}

bool lex_less(const State4& a, const State4& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

}  // namespace

std::vector<FixedPoint> solve_interior_fixed_points(const HemophiliaParams& p,
                                                    const SeedGrid& grid,
                                                    const NewtonOptions& opt) {
    std::vector<State4> seeds;
    const int n = std::max(grid.per_axis, 1);
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iu = 0; iu < n; ++iu)
                for (int iv = 0; iv < n; ++iv) {
                    auto coord = [&](int i) {
                        return n == 1 ? grid.lo
                                      : grid.lo + (grid.hi - grid.lo) * i / (n - 1);
                    };
                    seeds.push_back(
                        State4{coord(ix), coord(iy), coord(iu), coord(iv)});
                }
    seeds.insert(seeds.end(), grid.extra.begin(), grid.extra.end());
    auto known = SeedGrid::default_extra();
    seeds.insert(seeds.end(), known.begin(), known.end());

    std::vector<State4> roots;
    for (const State4& seed : seeds) {
        auto root = newton_from_seed(p, seed, opt);
        if (!root) continue;
        const State4& s = *root;
        if (std::fabs(s.x) <= kCoordinateZeroTol ||
            std::fabs(s.y) <= kCoordinateZeroTol ||
            std::fabs(s.u) <= kCoordinateZeroTol ||
            std::fabs(s.v) <= kCoordinateZeroTol)
            continue;  // not interior
        roots.push_back(s);
    }

    // Cluster roots within dedup_distance and keep the smallest-residual
    // representative of each cluster. On curves of fixed points nearby
    // roots are all genuine; the best-polished one is the useful answer.
    std::vector<FixedPoint> out;
    for (const State4& s : roots) {
        FixedPoint cand = make_fp(p, s, FixedPointForm::Interior);
        bool merged = false;
        for (FixedPoint& kept : out) {
            if (max_norm_diff(kept.state, s) <= opt.dedup_distance) {
                if (cand.residual < kept.residual) kept = cand;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(cand);
    }
    std::sort(out.begin(), out.end(),
              [](const FixedPoint& a, const FixedPoint& b) {
                  return lex_less(a.state, b.state);
              });
    return out;
}

StabilityClass classify(const HemophiliaParams& p, const FixedPoint& fp) {
    double r = residual(p, fp.state);
    if (!(r <= kFixedPointResidualTol)) {
        throw NotAFixedPointError("state has fixed-point residual " +
                                  std::to_string(r));
    }
    if (max_norm(fp.state) <= kCoordinateZeroTol) {
        // Derivative vanishes at the origin: every eigenvalue is 0.
        StabilityClass sc;
        sc.tag = StabilityTag::Attracting;
        sc.moduli = {0.0, 0.0, 0.0, 0.0};
        return sc;
    }
    return classify_spectrum(eigenvalues_numeric(jacobian(p, fp.state)));
}

void annotate(const HemophiliaParams& p, FixedPoint& fp) {
    fp.spectrum = eigenvalues_numeric(jacobian(p, fp.state));
    fp.stability = classify(p, fp);
}

}  // namespace gonodyn
