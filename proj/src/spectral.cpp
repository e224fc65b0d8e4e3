#include "gonodyn/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"
#include "gonodyn/fixed_points.hpp"

namespace gonodyn {

Jacobian4 jacobian(const HemophiliaParams& p, const State4& s) {
    Jacobian4 J;
    J[0] = {p.a1 * s.u, p.b1 * s.u, p.a1 * s.x + p.b1 * s.y, 0.0};
    J[1] = {p.c1 * s.v, p.b2 * s.u + p.d1 * s.v, p.b2 * s.y,
            p.c1 * s.x + p.d1 * s.y};
    J[2] = {p.a2 * s.u + p.c2 * s.v, p.b3 * s.u + p.d2 * s.v,
            p.a2 * s.x + p.b3 * s.y, p.c2 * s.x + p.d2 * s.y};
    J[3] = {0.0, p.b4 * s.u + p.d3 * s.v, p.b4 * s.y, p.d3 * s.y};
    return J;
}

State4 mul(const Jacobian4& J, const State4& t) {
    State4 r;
    for (int i = 0; i < 4; ++i) {
        r[i] = J[i][0] * t.x + J[i][1] * t.y + J[i][2] * t.u + J[i][3] * t.v;
    }
    return r;
}

CharCoeffs char_coeffs(const HemophiliaParams& p, const State4& s) {
    double r = residual(p, s);
    if (!(r <= kFixedPointResidualTol)) {
        throw NotAFixedPointError(
            "characteristic coefficients are only defined at fixed points; "
            "residual " +
            std::to_string(r));
    }
    const double x = s.x, y = s.y, u = s.u, v = s.v;
    const double a1 = p.a1, a2 = p.a2, c1 = p.c1, c2 = p.c2;
    const double b1 = p.b1, b2 = p.b2, b3 = p.b3, b4 = p.b4;
    const double d1 = p.d1, d2 = p.d2, d3 = p.d3;
    CharCoeffs c;
    c.p1 = a2 * x + (b3 + d3) * y + (a1 + b2) * u + d1 * v;
    c.p2 = (a1 * b3 + a1 * d3 + b2 * d3 - b4 * d1 - a2 * b1) * y * u +
           a1 * b2 * u * u + (a1 * d1 - b1 * c1) * u * v +
           (b3 * d3 - b4 * d2) * y * y + (a2 * d3 - b4 * c2) * x * y +
           (a2 * b2 - b4 * c1) * x * u + (a2 * d1 - c1 * d3 - a1 * c2) * x * v +
           (b3 * d1 - b2 * d2 - b1 * c2) * y * v;
    // Degree-reduced at the fixed point; not the characteristic
    // polynomial coefficient of an arbitrary state.
    c.p3 = a2 * d3 * x * y + b4 * c1 * x * u +
           (2 * a2 * d1 + c1 * d3 - b3 * c1 + a1 * c2 - b2 * c2) * x * v +
           (a1 * b4 * d2 - a1 * b3 * d3) * y * y * u +
           (a1 * b4 * d1 - a1 * b2 * d3 - b1 * b4 * c1) * y * u * u +
           (a1 * b2 * d2 - a1 * b3 * d1 + b1 * b3 * c1) * y * u * v +
           (a2 * b1 * c1 + a1 * b2 * c2 - a1 * a2 * d1) * x * u * v +
           (b2 * b4 * c2 - a2 * b2 * d3 - a1 * a2 * d3) * x * y * u +
           (b4 * c2 * d1 - b4 * c1 * d2 + b3 * c1 * d3 - a2 * d1 * d3) * x * y * v +
           a2 * c1 * x * x * (b4 * u + d3 * v) +
           (c2 * d1 - c1 * d2) * v * v * (a1 * x + b1 * y) +
           b1 * c2 * d3 * y * y * v;
    return c;
}

namespace {

double det3(const Jacobian4& J, int r0, int r1, int r2) {
    const int c0 = r0, c1 = r1, c2 = r2;  // principal minor: same columns
    return J[r0][c0] * (J[r1][c1] * J[r2][c2] - J[r1][c2] * J[r2][c1]) -
           J[r0][c1] * (J[r1][c0] * J[r2][c2] - J[r1][c2] * J[r2][c0]) +
           J[r0][c2] * (J[r1][c0] * J[r2][c1] - J[r1][c1] * J[r2][c0]);
}

double det2(const Jacobian4& J, int r0, int r1) {
    return J[r0][r0] * J[r1][r1] - J[r0][r1] * J[r1][r0];
}

double det4(const Jacobian4& J) {
    // Laplace expansion along the first row.
    double det = 0.0;
    for (int c = 0; c < 4; ++c) {
        double sub[3][3];
        int cc = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == c) continue;
            for (int i = 1; i < 4; ++i) sub[i - 1][cc] = J[i][j];
            ++cc;
        }
        double m = sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
                   sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
                   sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
        det += (c % 2 == 0 ? 1.0 : -1.0) * J[0][c] * m;
    }
    return det;
}

}  // namespace

CharPoly char_poly_numeric(const Jacobian4& J) {
    CharPoly c;
    c.p1 = J[0][0] + J[1][1] + J[2][2] + J[3][3];
    c.p2 = det2(J, 0, 1) + det2(J, 0, 2) + det2(J, 0, 3) + det2(J, 1, 2) +
           det2(J, 1, 3) + det2(J, 2, 3);
    c.p3 = -(det3(J, 0, 1, 2) + det3(J, 0, 1, 3) + det3(J, 0, 2, 3) +
             det3(J, 1, 2, 3));
    c.det = det4(J);
    return c;
}

namespace {

void sort_spectrum(Spectrum& sp) {
    std::sort(sp.values.begin(), sp.values.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() < b.real();
                  return a.imag() < b.imag();
              });
}

}  // namespace

Spectrum eigenvalues_closed_form(const CharCoeffs& c) {
    const double identity = 8.0 - 4.0 * c.p1 + 2.0 * c.p2 + c.p3;
    if (!(std::fabs(identity) <= 1e-8)) {
        throw IdentityViolatedError(
            "coefficient identity 8 - 4 p1 + 2 p2 + p3 = " +
            std::to_string(identity) +
            "; closed-form spectrum needs a nonzero fixed point");
    }
    // lambda^4 - p1 l^3 + p2 l^2 + p3 l = l (l - 2)(l^2 + (2 - p1) l + c0)
    // with c0 = p2 + 4 - 2 p1; roots -1 + (p1 +- sqrt(disc)) / 2.
    const double disc = c.p1 * c.p1 + 4.0 * c.p1 - 4.0 * c.p2 - 12.0;
    Spectrum sp;
    sp.values[0] = {0.0, 0.0};
    sp.values[1] = {2.0, 0.0};
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        sp.values[2] = {-1.0 + (c.p1 + root) / 2.0, 0.0};
        sp.values[3] = {-1.0 + (c.p1 - root) / 2.0, 0.0};
    } else {
        const double root = std::sqrt(-disc);
        sp.values[2] = {-1.0 + c.p1 / 2.0, root / 2.0};
        sp.values[3] = {-1.0 + c.p1 / 2.0, -root / 2.0};
    }
    sort_spectrum(sp);
    return sp;
}

Spectrum eigenvalues_numeric(const Jacobian4& J) {
    // Extended precision: fixed points of this operator routinely carry
    // defective double eigenvalues (0 or 2), where a backward-stable solver
    // splits the pair by ~sqrt(eps * ||J||). In double that lands near 1e-8;
    // long double pushes it below 1e-9.
    using Mat = Eigen::Matrix<long double, 4, 4>;
    Mat m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = static_cast<long double>(J[i][j]);
    Eigen::EigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
    Spectrum sp;
    for (int i = 0; i < 4; ++i) {
        std::complex<long double> lam = solver.eigenvalues()(i);
        sp.values[i] = {static_cast<double>(lam.real()), static_cast<double>(lam.imag())};
    }
    sort_spectrum(sp);
    return sp;
}

const char* to_string(StabilityTag t) {
    switch (t) {
        case StabilityTag::Attracting: return "Attracting";
        case StabilityTag::Repelling: return "Repelling";
        case StabilityTag::Saddle: return "Saddle";
        case StabilityTag::Nonhyperbolic: return "Nonhyperbolic";
    }
    return "?";
}

StabilityClass classify_spectrum(const Spectrum& sp) {
    StabilityClass sc;
    for (int i = 0; i < 4; ++i) sc.moduli[i] = std::abs(sp.values[i]);
    std::sort(sc.moduli.begin(), sc.moduli.end());
    bool on_circle = false, below = false, above = false;
    for (double m : sc.moduli) {
        if (std::fabs(m - 1.0) <= kUnitCircleTol)
            on_circle = true;
        else if (m < 1.0)
            below = true;
        else
            above = true;
    }
    if (on_circle)
        sc.tag = StabilityTag::Nonhyperbolic;
    else if (!above)
        sc.tag = StabilityTag::Attracting;
    else if (!below)
        sc.tag = StabilityTag::Repelling;
    else
        sc.tag = StabilityTag::Saddle;
    return sc;
}

bool identity_nonhyperbolic(const CharCoeffs& c, double tol) {
    return std::fabs(c.p1 - c.p2 - 3.0) <= tol ||
           std::fabs(3.0 * c.p1 - c.p2 - 7.0) <= tol;
}

}  // namespace gonodyn
