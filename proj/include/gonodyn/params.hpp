#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gonodyn {

inline constexpr double kNormalizationTol = 1e-12;

// Heredity coefficients of the four-type X-linked model. Each letter group
// describes one parent pairing and must form a probability vector:
//   a1 + a2 = 1, c1 + c2 = 1, b1 + b2 + b3 + b4 = 1, d1 + d2 + d3 = 1,
// all entries nonnegative.
struct HemophiliaParams {
    double a1 = 0, a2 = 0;
    double c1 = 0, c2 = 0;
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
    double d1 = 0, d2 = 0, d3 = 0;

    friend bool operator==(const HemophiliaParams&,
                           const HemophiliaParams&) = default;
};

enum class ValidationErrorKind {
    NegativeCoefficient,
    NormalizationViolation,
    DimensionMismatch,
};

struct ValidationIssue {
    ValidationErrorKind kind;
    std::string where;    // coefficient or group name
    double residual = 0;  // offending value or |group sum - 1|
    std::string message() const;
};

struct ValidationResult {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string message() const;
};

ValidationResult validate(const HemophiliaParams& p);

// Throws InvalidParamsError when validate(p) fails.
void require_valid(const HemophiliaParams& p);

// Equal-chance coefficients: a=c=(1/2,1/2), b=(1/4,..), d=(1/3,..).
HemophiliaParams classical_params();

// The worked example operator with a curve of interior fixed points.
HemophiliaParams w0_params();

// nullopt when the name is not a known preset ("classical", "w0").
std::optional<HemophiliaParams> preset_params(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace gonodyn
