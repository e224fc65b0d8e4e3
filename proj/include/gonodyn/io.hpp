#pragma once

#include <string>
#include <variant>

#include "gonodyn/general.hpp"
#include "gonodyn/params.hpp"

namespace gonodyn {

using AnyParams = std::variant<HemophiliaParams, GeneralOperator>;

// JSON with keys a1..d3 selects the four-type model; keys eta, nu, pf, pm
// (pf as [i][r][j], pm as [i][r][l] nested arrays) select the general
// operator. Throws ConfigError on parse/shape problems and
// InvalidParamsError when the loaded coefficients fail validation.
AnyParams load_params_file(const std::string& path);
AnyParams parse_params_json(const std::string& text);

std::string to_json(const HemophiliaParams& p);
std::string to_json(const GeneralOperator& op);
void save_params_file(const AnyParams& p, const std::string& path);

}  // namespace gonodyn
