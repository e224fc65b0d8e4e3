#include "gonodyn/params.hpp"

#include <cmath>
#include <sstream>

#include "gonodyn/errors.hpp"

namespace gonodyn {

std::string ValidationIssue::message() const {
    std::ostringstream os;
    switch (kind) {
        case ValidationErrorKind::NegativeCoefficient:
            os << "negative coefficient " << where << " = " << residual;
            break;
        case ValidationErrorKind::NormalizationViolation:
            os << "group " << where << " sums to 1 " << std::showpos << residual
               << std::noshowpos << " (tolerance 1e-12)";
            break;
        case ValidationErrorKind::DimensionMismatch:
            os << "dimension mismatch: " << where;
            break;
    }
    return os.str();
}

std::string ValidationResult::message() const {
    std::string out;
    for (const auto& i : issues) {
        if (!out.empty()) out += "; ";
        out += i.message();
    }
    return out;
}

namespace {

void check_nonneg(ValidationResult& r, const char* name, double value) {
    if (value < 0.0 || std::isnan(value)) {
        r.issues.push_back({ValidationErrorKind::NegativeCoefficient, name, value});
    }
}

void check_group(ValidationResult& r, const char* name, double sum) {
    if (!(std::fabs(sum - 1.0) <= kNormalizationTol)) {
        r.issues.push_back(
            {ValidationErrorKind::NormalizationViolation, name, sum - 1.0});
    }
}

}  // namespace

ValidationResult validate(const HemophiliaParams& p) {
    ValidationResult r;
    check_nonneg(r, "a1", p.a1);
    check_nonneg(r, "a2", p.a2);
    check_nonneg(r, "c1", p.c1);
    check_nonneg(r, "c2", p.c2);
    check_nonneg(r, "b1", p.b1);
    check_nonneg(r, "b2", p.b2);
    check_nonneg(r, "b3", p.b3);
    check_nonneg(r, "b4", p.b4);
    check_nonneg(r, "d1", p.d1);
    check_nonneg(r, "d2", p.d2);
    check_nonneg(r, "d3", p.d3);
    check_group(r, "a", p.a1 + p.a2);
    check_group(r, "c", p.c1 + p.c2);
    check_group(r, "b", p.b1 + p.b2 + p.b3 + p.b4);
    check_group(r, "d", p.d1 + p.d2 + p.d3);
    return r;
}

void require_valid(const HemophiliaParams& p) {
    auto r = validate(p);
    if (!r.ok()) throw InvalidParamsError("invalid parameters: " + r.message());
}

HemophiliaParams classical_params() {
    HemophiliaParams p;
    p.a1 = p.a2 = 0.5;
    p.c1 = p.c2 = 0.5;
    p.b1 = p.b2 = p.b3 = p.b4 = 0.25;
    p.d1 = p.d2 = p.d3 = 1.0 / 3.0;
    return p;
}

HemophiliaParams w0_params() {
    HemophiliaParams p;
    p.a1 = p.a2 = 0.5;
    p.c1 = 0.0;
    p.c2 = 1.0;
    p.b1 = 0.0;
    p.b2 = 0.5;
    p.b3 = 0.5;
    p.b4 = 0.0;
    p.d1 = 0.0;
    p.d2 = 0.5;
    p.d3 = 0.5;
    return p;
}

std::optional<HemophiliaParams> preset_params(std::string_view name) {
    if (name == "classical") return classical_params();
    if (name == "w0") return w0_params();
    return std::nullopt;
}

std::vector<std::string> preset_names() { return {"classical", "w0"}; }

}  // namespace gonodyn
