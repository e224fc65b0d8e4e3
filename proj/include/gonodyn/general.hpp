#pragma once

#include <cstddef>
#include <vector>

#include "gonodyn/params.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn {

// Quadratic sex-structured evolution operator with eta female and nu male
// types. pf(i, r, j) is the share of type-j daughters from an (i female,
// r male) pairing, pm(i, r, l) the share of type-l sons. For every pairing
// the daughter and son shares together sum to 1. Indices are 0-based.
class GeneralOperator {
  public:
    GeneralOperator(std::size_t eta, std::size_t nu)
        : eta_(eta), nu_(nu), pf_(eta * nu * eta, 0.0), pm_(eta * nu * nu, 0.0) {}

    std::size_t eta() const { return eta_; }
    std::size_t nu() const { return nu_; }

    double pf(std::size_t i, std::size_t r, std::size_t j) const {
        return pf_[(i * nu_ + r) * eta_ + j];
    }
    double& pf(std::size_t i, std::size_t r, std::size_t j) {
        return pf_[(i * nu_ + r) * eta_ + j];
    }
    double pm(std::size_t i, std::size_t r, std::size_t l) const {
        return pm_[(i * nu_ + r) * nu_ + l];
    }
    double& pm(std::size_t i, std::size_t r, std::size_t l) {
        return pm_[(i * nu_ + r) * nu_ + l];
    }

    const std::vector<double>& pf_flat() const { return pf_; }
    const std::vector<double>& pm_flat() const { return pm_; }

    friend bool operator==(const GeneralOperator&, const GeneralOperator&) = default;

  private:
    std::size_t eta_, nu_;
    std::vector<double> pf_, pm_;  // [(i*nu + r)*eta + j], [(i*nu + r)*nu + l]
};

// Nonnegativity plus the per-pairing sum-to-one constraint (tolerance
// kNormalizationTol on each pairing).
ValidationResult validate(const GeneralOperator& op);

void require_valid(const GeneralOperator& op);

// Embeds the four-type model as the eta = nu = 2 instance. Female types:
// (0) carrier-free, (1) carrier; male types: (0) healthy, (1) affected.
// Throws InvalidParamsError when p itself is invalid.
GeneralOperator hemophilia_to_general(const HemophiliaParams& p);

// One evolution step: x'_j = sum_{i,r} pf(i,r,j) x_i y_r and likewise for
// y'. Throws DimensionMismatchError when t does not match (eta, nu).
StateN apply(const GeneralOperator& op, const StateN& t);

}  // namespace gonodyn
