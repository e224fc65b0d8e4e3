#include "gonodyn/general.hpp"

#include <cmath>
#include <string>

#include "gonodyn/errors.hpp"

namespace gonodyn {

ValidationResult validate(const GeneralOperator& op) {
    ValidationResult r;
    const std::size_t eta = op.eta(), nu = op.nu();
    if (eta == 0 || nu == 0) {
        r.issues.push_back({ValidationErrorKind::DimensionMismatch,
                            "eta and nu must be positive", 0.0});
        return r;
    }
    for (std::size_t i = 0; i < eta; ++i) {
        for (std::size_t rr = 0; rr < nu; ++rr) {
            double sum = 0.0;
            for (std::size_t j = 0; j < eta; ++j) {
                double c = op.pf(i, rr, j);
                if (c < 0.0 || std::isnan(c)) {
                    r.issues.push_back({ValidationErrorKind::NegativeCoefficient,
                                        "pf(" + std::to_string(i) + "," +
                                            std::to_string(rr) + "," +
                                            std::to_string(j) + ")",
                                        c});
                }
                sum += c;
            }
            for (std::size_t l = 0; l < nu; ++l) {
                double c = op.pm(i, rr, l);
                if (c < 0.0 || std::isnan(c)) {
                    r.issues.push_back({ValidationErrorKind::NegativeCoefficient,
                                        "pm(" + std::to_string(i) + "," +
                                            std::to_string(rr) + "," +
                                            std::to_string(l) + ")",
                                        c});
                }
                sum += c;
            }
            if (!(std::fabs(sum - 1.0) <= kNormalizationTol)) {
                r.issues.push_back({ValidationErrorKind::NormalizationViolation,
                                    "pairing (" + std::to_string(i) + "," +
                                        std::to_string(rr) + ")",
                                    sum - 1.0});
            }
        }
    }
    return r;
}

void require_valid(const GeneralOperator& op) {
    auto r = validate(op);
    if (!r.ok()) throw InvalidParamsError("invalid operator: " + r.message());
}

GeneralOperator hemophilia_to_general(const HemophiliaParams& p) {
    require_valid(p);
    GeneralOperator op(2, 2);
    // pairing (0,0): both parents carrier-free / healthy
    op.pf(0, 0, 0) = p.a1;
    op.pm(0, 0, 0) = p.a2;
    // pairing (0,1): carrier-free female, affected male
    op.pf(0, 1, 1) = p.c1;
    op.pm(0, 1, 0) = p.c2;
    // pairing (1,0): carrier female, healthy male
    op.pf(1, 0, 0) = p.b1;
    op.pf(1, 0, 1) = p.b2;
    op.pm(1, 0, 0) = p.b3;
    op.pm(1, 0, 1) = p.b4;
    // pairing (1,1): carrier female, affected male
    op.pf(1, 1, 1) = p.d1;
    op.pm(1, 1, 0) = p.d2;
    op.pm(1, 1, 1) = p.d3;
    return op;
}

StateN apply(const GeneralOperator& op, const StateN& t) {
    const std::size_t eta = op.eta(), nu = op.nu();
    if (t.x.size() != eta || t.y.size() != nu) {
        throw DimensionMismatchError(
            "state has (" + std::to_string(t.x.size()) + "," +
            std::to_string(t.y.size()) + ") coordinates, operator expects (" +
            std::to_string(eta) + "," + std::to_string(nu) + ")");
    }
    StateN out;
    out.x.assign(eta, 0.0);
    out.y.assign(nu, 0.0);
    // Pairings accumulate in (i, r) lexicographic order so the embedded
    // four-type model reproduces apply(HemophiliaParams) bit for bit.
    for (std::size_t i = 0; i < eta; ++i) {
        for (std::size_t r = 0; r < nu; ++r) {
            const double w = t.x[i] * t.y[r];
            for (std::size_t j = 0; j < eta; ++j) out.x[j] += op.pf(i, r, j) * w;
            for (std::size_t l = 0; l < nu; ++l) out.y[l] += op.pm(i, r, l) * w;
        }
    }
    return out;
}

}  // namespace gonodyn
