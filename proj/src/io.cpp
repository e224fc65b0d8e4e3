#include "gonodyn/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gonodyn/errors.hpp"

namespace gonodyn {

namespace {

using nlohmann::json;

HemophiliaParams hemophilia_from_json(const json& j) {
    HemophiliaParams p;
    auto get = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw ConfigError(std::string("parameter file missing numeric key '") +
                              key + "'");
        }
        return j[key].get<double>();
    };
    p.a1 = get("a1");
    p.a2 = get("a2");
    p.c1 = get("c1");
    p.c2 = get("c2");
    p.b1 = get("b1");
    p.b2 = get("b2");
    p.b3 = get("b3");
    p.b4 = get("b4");
    p.d1 = get("d1");
    p.d2 = get("d2");
    p.d3 = get("d3");
    require_valid(p);
    return p;
}

GeneralOperator general_from_json(const json& j) {
    for (const char* key : {"eta", "nu", "pf", "pm"}) {
        if (!j.contains(key)) {
            throw ConfigError(std::string("general operator file missing key '") +
                              key + "'");
        }
    }
    if (!j["eta"].is_number_unsigned() || !j["nu"].is_number_unsigned()) {
        throw ConfigError("eta and nu must be positive integers");
    }
    const std::size_t eta = j["eta"].get<std::size_t>();
    const std::size_t nu = j["nu"].get<std::size_t>();
    if (eta == 0 || nu == 0) throw ConfigError("eta and nu must be positive");
    GeneralOperator op(eta, nu);
    auto fill = [&](const json& arr, const char* name, std::size_t inner,
                    auto&& set) {
        if (!arr.is_array() || arr.size() != eta) {
            throw ConfigError(std::string(name) + " must be a [eta][nu][..] array");
        }
        for (std::size_t i = 0; i < eta; ++i) {
            if (!arr[i].is_array() || arr[i].size() != nu) {
                throw ConfigError(std::string(name) + "[" + std::to_string(i) +
                                  "] must have nu entries");
            }
            for (std::size_t r = 0; r < nu; ++r) {
                const json& cell = arr[i][r];
                if (!cell.is_array() || cell.size() != inner) {
                    throw ConfigError(std::string(name) + "[" + std::to_string(i) +
                                      "][" + std::to_string(r) + "] has wrong length");
                }
                for (std::size_t k = 0; k < inner; ++k) {
                    if (!cell[k].is_number()) {
                        throw ConfigError(std::string(name) + " entries must be numbers");
                    }
                    set(i, r, k, cell[k].get<double>());
                }
            }
        }
    };
    fill(j["pf"], "pf", eta,
         [&](std::size_t i, std::size_t r, std::size_t k, double val) {
             op.pf(i, r, k) = val;
         });
    fill(j["pm"], "pm", nu,
         [&](std::size_t i, std::size_t r, std::size_t k, double val) {
             op.pm(i, r, k) = val;
         });
    require_valid(op);
    return op;
}

}  // namespace

AnyParams parse_params_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("parameter file is not valid JSON: ") +
                          e.what());
    }
    if (!j.is_object()) throw ConfigError("parameter file must be a JSON object");
    if (j.contains("eta") || j.contains("nu")) return general_from_json(j);
    return hemophilia_from_json(j);
}

AnyParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open parameter file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_json(buf.str());
}

std::string to_json(const HemophiliaParams& p) {
    json j;
    j["a1"] = p.a1;
    j["a2"] = p.a2;
    j["c1"] = p.c1;
    j["c2"] = p.c2;
    j["b1"] = p.b1;
    j["b2"] = p.b2;
    j["b3"] = p.b3;
    j["b4"] = p.b4;
    j["d1"] = p.d1;
    j["d2"] = p.d2;
    j["d3"] = p.d3;
    return j.dump(2);
}

std::string to_json(const GeneralOperator& op) {
    json j;
    j["eta"] = op.eta();
    j["nu"] = op.nu();
    json pf = json::array(), pm = json::array();
    for (std::size_t i = 0; i < op.eta(); ++i) {
        json pf_row = json::array(), pm_row = json::array();
        for (std::size_t r = 0; r < op.nu(); ++r) {
            json pf_cell = json::array(), pm_cell = json::array();
            for (std::size_t k = 0; k < op.eta(); ++k) pf_cell.push_back(op.pf(i, r, k));
            for (std::size_t k = 0; k < op.nu(); ++k) pm_cell.push_back(op.pm(i, r, k));
            pf_row.push_back(pf_cell);
            pm_row.push_back(pm_cell);
        }
        pf.push_back(pf_row);
        pm.push_back(pm_row);
    }
    j["pf"] = pf;
    j["pm"] = pm;
    return j.dump(2);
}

void save_params_file(const AnyParams& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write parameter file '" + path + "'");
    std::visit([&](const auto& v) { out << to_json(v) << '\n'; }, p);
}

}  // namespace gonodyn
