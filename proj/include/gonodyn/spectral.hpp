#pragma once

#include <array>
#include <complex>
#include <string>

#include "gonodyn/params.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn {

// Row-major derivative of the evolution map at a state.
struct Jacobian4 {
    std::array<std::array<double, 4>, 4> m{};

    const std::array<double, 4>& operator[](std::size_t r) const { return m[r]; }
    std::array<double, 4>& operator[](std::size_t r) { return m[r]; }
};

Jacobian4 jacobian(const HemophiliaParams& p, const State4& s);

// Matrix-vector product J * t.
State4 mul(const Jacobian4& J, const State4& t);

// Coefficients of the degree-4 characteristic equation in the form
//   lambda^4 - p1 lambda^3 + p2 lambda^2 + p3 lambda = 0,
// which holds at fixed points (the constant term vanishes there).
struct CharCoeffs {
    double p1 = 0, p2 = 0, p3 = 0;
};

// Closed-form coefficient polynomials evaluated at a fixed point s.
// Valid only at fixed points; throws NotAFixedPointError when the
// max-norm residual of s exceeds 1e-10.
CharCoeffs char_coeffs(const HemophiliaParams& p, const State4& s);

// Numeric route: p1 = trace, p2 = sum of principal 2x2 minors,
// p3 = -(sum of principal 3x3 minors), det = det(J). Valid at any state.
struct CharPoly {
    double p1 = 0, p2 = 0, p3 = 0, det = 0;
};
CharPoly char_poly_numeric(const Jacobian4& J);

// Eigenvalues sorted by (real, imag) ascending.
struct Spectrum {
    std::array<std::complex<double>, 4> values{};
};

// Spectrum at a nonzero fixed point from the coefficient triple: 0 and 2
// always, the other two from the quadratic factor (complex when its
// discriminant p1^2 + 4 p1 - 4 p2 - 12 is negative). Requires the factor
// identity |8 - 4 p1 + 2 p2 + p3| <= 1e-8; throws IdentityViolatedError
// otherwise.
Spectrum eigenvalues_closed_form(const CharCoeffs& c);

// Dense numeric eigensolve of the Jacobian. This is the authoritative
// route for classification.
Spectrum eigenvalues_numeric(const Jacobian4& J);

enum class StabilityTag { Attracting, Repelling, Saddle, Nonhyperbolic };

const char* to_string(StabilityTag t);

struct StabilityClass {
    StabilityTag tag = StabilityTag::Saddle;
    std::array<double, 4> moduli{};  // |lambda|, sorted ascending
};

inline constexpr double kUnitCircleTol = 1e-9;

// Classification by eigenvalue moduli alone: any modulus within
// kUnitCircleTol of 1 -> Nonhyperbolic; else all below 1 -> Attracting,
// all above -> Repelling, otherwise Saddle. Invariant under permutation
// and conjugation of the spectrum.
StabilityClass classify_spectrum(const Spectrum& sp);

// Coefficient-identity route for nonhyperbolicity at nonzero fixed
// points: p1 - p2 = 3 or 3 p1 - p2 = 7 within tol (each corresponds to a
// real eigenvalue of modulus exactly 1 in the quadratic factor).
bool identity_nonhyperbolic(const CharCoeffs& c, double tol = kUnitCircleTol);

}  // namespace gonodyn
