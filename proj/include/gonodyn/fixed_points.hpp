#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gonodyn/params.hpp"
#include "gonodyn/spectral.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn {

// The four closed-form families plus the interior family:
//   Origin                    always a fixed point
//   BothAxes  (1/a2, 0, 1/a1, 0)   requires a1, a2 in (0, 1)
//   CarrierAxis (0, 1/d3, 0, 1/d1) requires d2 = 0 and d1, d3 in (0, 1)
//   MixedAxis (0, 1/b3, 1/b2, 0)   requires b1 = b4 = 0 and b2, b3 in (0, 1)
//   Interior  all four coordinates nonzero (found numerically, not unique)
enum class FixedPointForm { Origin, BothAxes, CarrierAxis, MixedAxis, Interior };

const char* to_string(FixedPointForm f);

// Tolerance on the zero-coefficient existence conditions and on deciding
// whether a coordinate counts as nonzero.
inline constexpr double kExistenceTol = 1e-12;
inline constexpr double kCoordinateZeroTol = 1e-10;
inline constexpr double kFixedPointResidualTol = 1e-10;

struct FixedPoint {
    State4 state{};
    FixedPointForm form = FixedPointForm::Origin;
    double residual = 0.0;
    std::optional<Spectrum> spectrum;       // filled by annotate()
    std::optional<StabilityClass> stability;
};

// Max-norm of W(s) - s; +inf when the image overflows.
double residual(const HemophiliaParams& p, const State4& s);

// Origin plus every closed-form family whose existence condition holds.
// Assumes p valid.
std::vector<FixedPoint> closed_form_fixed_points(const HemophiliaParams& p);

struct SeedGrid {
    double lo = -3.0;
    double hi = 3.0;
    int per_axis = 5;
    std::vector<State4> extra;  // appended after the lattice seeds

    // Default extra seeds: the known interior solutions of the worked
    // example operator, useful starting guesses in general.
    static std::vector<State4> default_extra();
};

struct NewtonOptions {
    double tol = 1e-13;          // stop once residual falls below this
    int max_iter = 60;           // Newton steps per seed
    int max_halvings = 20;       // step damping attempts per iteration
    double accept_residual = kFixedPointResidualTol;
    double dedup_distance = 1e-6;
};

// Damped Newton on W(s) - s from every seed; keeps converged roots with
// all four coordinates nonzero (|coord| > kCoordinateZeroTol), clusters
// them by max-norm distance keeping the smallest-residual representative,
// and returns the clusters sorted lexicographically. Seeds where the
// linear solve degenerates or iteration fails to converge are skipped.
// The result is not claimed exhaustive.
std::vector<FixedPoint> solve_interior_fixed_points(const HemophiliaParams& p,
                                                    const SeedGrid& grid = {},
                                                    const NewtonOptions& opt = {});

// Stability of a fixed point: origin -> Attracting (all eigenvalues 0);
// otherwise by the numeric spectrum moduli. Throws NotAFixedPointError
// when fp.state has residual above kFixedPointResidualTol.
StabilityClass classify(const HemophiliaParams& p, const FixedPoint& fp);

// Fills fp.spectrum (numeric) and fp.stability in place.
void annotate(const HemophiliaParams& p, FixedPoint& fp);

}  // namespace gonodyn
