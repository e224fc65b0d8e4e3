#include <array>
#include <complex>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"
#include "gonodyn/fixed_points.hpp"
#include "gonodyn/general.hpp"
#include "gonodyn/io.hpp"
#include "gonodyn/limits.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/spectral.hpp"
#include "gonodyn/state.hpp"

namespace py = pybind11;
using namespace gonodyn;

namespace {

using Coords = std::array<double, 4>;

State4 to_state(const Coords& a) { return {a[0], a[1], a[2], a[3]}; }
Coords from_state(const State4& s) { return {s.x, s.y, s.u, s.v}; }

std::vector<std::complex<double>> spectrum_list(const Spectrum& sp) {
    return {sp.values.begin(), sp.values.end()};
}

FixedPointForm detect_form(const State4& s) {
    auto zero = [](double c) { return std::abs(c) <= kCoordinateZeroTol; };
    bool zx = zero(s.x), zy = zero(s.y), zu = zero(s.u), zv = zero(s.v);
    if (zx && zy && zu && zv) return FixedPointForm::Origin;
    if (zy && zv && !zx && !zu) return FixedPointForm::BothAxes;
    if (zx && zu && !zy && !zv) return FixedPointForm::CarrierAxis;
    if (zx && zv && !zy && !zu) return FixedPointForm::MixedAxis;
    return FixedPointForm::Interior;
}

py::dict fixed_point_dict(const FixedPoint& fp) {
    py::dict d;
    d["form"] = to_string(fp.form);
    d["state"] = from_state(fp.state);
    d["residual"] = fp.residual;
    if (fp.spectrum) d["eigenvalues"] = spectrum_list(*fp.spectrum);
    if (fp.stability) {
        d["stability"] = to_string(fp.stability->tag);
        d["moduli"] = fp.stability->moduli;
    }
    return d;
}

py::dict prediction_dict(const LimitPrediction& pred) {
    py::dict d;
    d["outcome"] = to_string(pred.outcome);
    d["justification"] = to_string(pred.kind);
    d["detail"] = pred.detail;
    d["point"] = pred.point ? py::cast(from_state(*pred.point)) : py::none();
    return d;
}

GeneralOperator build_general(const std::vector<std::vector<std::vector<double>>>& pf,
                              const std::vector<std::vector<std::vector<double>>>& pm) {
    size_t eta = pf.size();
    size_t nu = eta && !pf[0].empty() ? pf[0].size() : 0;
    if (!eta || !nu) throw DimensionMismatchError("pf must be a nonempty [i][r][j] array");
    GeneralOperator op(eta, nu);
    if (pm.size() != eta) throw DimensionMismatchError("pm has a different female count");
    for (size_t i = 0; i < eta; ++i) {
        if (pf[i].size() != nu || pm[i].size() != nu)
            throw DimensionMismatchError("pf/pm male counts disagree");
        for (size_t r = 0; r < nu; ++r) {
            if (pf[i][r].size() != eta || pm[i][r].size() != nu)
                throw DimensionMismatchError("pf/pm daughter/son counts disagree");
            for (size_t j = 0; j < eta; ++j) op.pf(i, r, j) = pf[i][r][j];
            for (size_t l = 0; l < nu; ++l) op.pm(i, r, l) = pm[i][r][l];
        }
    }
    require_valid(op);
    return op;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical engine for a four-type X-linked inheritance evolution operator";
    m.attr("__version__") = "0.1.0";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InternalCheckError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const IdentityViolatedError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<HemophiliaParams>(m, "Params",
                                 "Heredity coefficients; each letter group must form a "
                                 "probability vector")
        .def(py::init([](double a1, double a2, double c1, double c2, double b1, double b2,
                         double b3, double b4, double d1, double d2, double d3) {
                 return HemophiliaParams{a1, a2, c1, c2, b1, b2, b3, b4, d1, d2, d3};
             }),
             py::arg("a1"), py::arg("a2"), py::arg("c1"), py::arg("c2"), py::arg("b1"),
             py::arg("b2"), py::arg("b3"), py::arg("b4"), py::arg("d1"), py::arg("d2"),
             py::arg("d3"))
        .def_readwrite("a1", &HemophiliaParams::a1)
        .def_readwrite("a2", &HemophiliaParams::a2)
        .def_readwrite("c1", &HemophiliaParams::c1)
        .def_readwrite("c2", &HemophiliaParams::c2)
        .def_readwrite("b1", &HemophiliaParams::b1)
        .def_readwrite("b2", &HemophiliaParams::b2)
        .def_readwrite("b3", &HemophiliaParams::b3)
        .def_readwrite("b4", &HemophiliaParams::b4)
        .def_readwrite("d1", &HemophiliaParams::d1)
        .def_readwrite("d2", &HemophiliaParams::d2)
        .def_readwrite("d3", &HemophiliaParams::d3)
        .def("validate", [](const HemophiliaParams& p) { require_valid(p); },
             "raises ValueError when a coefficient group is invalid")
        .def("to_json", [](const HemophiliaParams& p) { return to_json(p); })
        .def("__eq__", [](const HemophiliaParams& a,
                          const HemophiliaParams& b) { return a == b; })
        .def("__repr__", [](const HemophiliaParams& p) {
            return "Params(" + to_json(p) + ")";
        });

    m.def("classical_params", &classical_params, "equal-chance coefficients");
    m.def("w0_params", &w0_params, "worked example with a curve of interior fixed points");
    m.def("preset_names", &preset_names);
    m.def(
        "preset_params",
        [](const std::string& name) -> py::object {
            auto p = preset_params(name);
            return p ? py::cast(*p) : py::none();
        },
        py::arg("name"), "None when the name is unknown");
    m.def(
        "params_from_json",
        [](const std::string& text) {
            return std::get<HemophiliaParams>(parse_params_json(text));
        },
        py::arg("text"));

    m.def(
        "apply", [](const HemophiliaParams& p, const Coords& t) {
            return from_state(apply(p, to_state(t)));
        },
        py::arg("params"), py::arg("state"), "one evolution step");
    m.def(
        "residual",
        [](const HemophiliaParams& p, const Coords& t) { return residual(p, to_state(t)); },
        py::arg("params"), py::arg("state"), "max-norm of W(state) - state");

    m.def(
        "iterate",
        [](const HemophiliaParams& p, const Coords& t0, int steps, double max_norm,
           double origin_tol, double point_tol) {
            IterationCaps caps{max_norm, origin_tol, point_tol};
            Trajectory<State4> tr = iterate(p, to_state(t0), steps, caps);
            std::vector<Coords> states;
            states.reserve(tr.states.size());
            for (const auto& s : tr.states) states.push_back(from_state(s));
            py::dict d;
            d["states"] = states;
            d["termination"] = to_string(tr.termination);
            d["steps"] = tr.steps();
            return d;
        },
        py::arg("params"), py::arg("state"), py::arg("steps") = 200,
        py::arg("max_norm") = 1e12, py::arg("origin_tol") = 1e-12,
        py::arg("point_tol") = 1e-13,
        "orbit of the initial state; stops early at the origin, at a fixed point or "
        "on overflow");

    m.def(
        "fixed_points",
        [](const HemophiliaParams& p, bool seed_search) {
            std::vector<FixedPoint> fps = closed_form_fixed_points(p);
            if (seed_search)
                for (auto& fp : solve_interior_fixed_points(p)) fps.push_back(std::move(fp));
            py::list out;
            for (auto& fp : fps) {
                annotate(p, fp);
                out.append(fixed_point_dict(fp));
            }
            return out;
        },
        py::arg("params"), py::arg("seed_search") = false,
        "closed-form fixed points, plus seeded Newton roots when requested, annotated "
        "with spectra and stability classes");

    m.def(
        "jacobian",
        [](const HemophiliaParams& p, const Coords& t) {
            Jacobian4 J = jacobian(p, to_state(t));
            std::array<std::array<double, 4>, 4> rows{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) rows[size_t(i)][size_t(j)] = J[i][j];
            return rows;
        },
        py::arg("params"), py::arg("state"));
    m.def(
        "char_coeffs",
        [](const HemophiliaParams& p, const Coords& t) {
            CharCoeffs c = char_coeffs(p, to_state(t));
            return py::make_tuple(c.p1, c.p2, c.p3);
        },
        py::arg("params"), py::arg("state"),
        "cubic factor coefficients at a fixed point (raises ValueError elsewhere)");
    m.def(
        "eigenvalues_closed_form",
        [](double p1, double p2, double p3) {
            return spectrum_list(eigenvalues_closed_form(CharCoeffs{p1, p2, p3}));
        },
        py::arg("p1"), py::arg("p2"), py::arg("p3"));
    m.def(
        "eigenvalues_numeric",
        [](const HemophiliaParams& p, const Coords& t) {
            return spectrum_list(eigenvalues_numeric(jacobian(p, to_state(t))));
        },
        py::arg("params"), py::arg("state"));
    m.def(
        "classify",
        [](const HemophiliaParams& p, const Coords& t) {
            State4 s = to_state(t);
            FixedPoint fp{s, detect_form(s), residual(p, s), {}, {}};
            annotate(p, fp);
            return fixed_point_dict(fp);
        },
        py::arg("params"), py::arg("state"),
        "spectrum and stability class of a fixed point");

    m.def(
        "predict_limit",
        [](const HemophiliaParams& p, const Coords& t, int k_max) {
            PredictorConfig cfg;
            cfg.k_max = k_max;
            return prediction_dict(predict_limit(p, to_state(t), cfg));
        },
        py::arg("params"), py::arg("state"), py::arg("k_max") = 50,
        "theorem-backed orbit limit prediction; outcome is Unknown when no sufficient "
        "condition fires");
    m.def(
        "classify_region",
        [](const HemophiliaParams& p, const Coords& t) {
            Region r = classify_region(to_state(t), p);
            py::dict d;
            d["O"] = r.O;
            d["I"] = r.I;
            d["J"] = r.J;
            d["P"] = r.P;
            d["P0"] = r.P0;
            d["N"] = r.N;
            d["N0"] = r.N0;
            d["N1"] = r.N1;
            d["q_level"] = r.q_level ? py::cast(*r.q_level) : py::none();
            d["delta0"] = r.delta0 ? py::cast(*r.delta0) : py::none();
            d["text"] = r.to_string();
            return d;
        },
        py::arg("params"), py::arg("state"),
        "membership in the invariant and sign-structured sets");
    m.def(
        "simulate_until",
        [](const HemophiliaParams& p, const Coords& t, int max_steps) {
            SimOutcome s = simulate_until(p, to_state(t), max_steps);
            py::dict d;
            d["kind"] = to_string(s.kind);
            d["last"] = from_state(s.last);
            d["steps"] = s.steps;
            return d;
        },
        py::arg("params"), py::arg("state"), py::arg("max_steps") = 200,
        "empirical orbit outcome");
    m.def(
        "axis_trajectory",
        [](const HemophiliaParams& p, const Coords& t, int n) {
            auto [state, pred] = closed_form_axis_trajectory(p, to_state(t), n);
            return py::make_tuple(from_state(state), prediction_dict(pred));
        },
        py::arg("params"), py::arg("state"), py::arg("n"),
        "exact n-step image and limit on the supported invariant planes");

    m.def(
        "embed_params",
        [](const HemophiliaParams& p) {
            GeneralOperator op = hemophilia_to_general(p);
            std::vector<std::vector<std::vector<double>>> pf, pm;
            for (size_t i = 0; i < op.eta(); ++i) {
                pf.emplace_back();
                pm.emplace_back();
                for (size_t r = 0; r < op.nu(); ++r) {
                    std::vector<double> fj, ml;
                    for (size_t j = 0; j < op.eta(); ++j) fj.push_back(op.pf(i, r, j));
                    for (size_t l = 0; l < op.nu(); ++l) ml.push_back(op.pm(i, r, l));
                    pf.back().push_back(std::move(fj));
                    pm.back().push_back(std::move(ml));
                }
            }
            py::dict d;
            d["eta"] = op.eta();
            d["nu"] = op.nu();
            d["pf"] = pf;
            d["pm"] = pm;
            return d;
        },
        py::arg("params"), "the four-type model as a (2, 2) general operator");
    m.def(
        "apply_general",
        [](const std::vector<std::vector<std::vector<double>>>& pf,
           const std::vector<std::vector<std::vector<double>>>& pm,
           const std::vector<double>& x, const std::vector<double>& y) {
            GeneralOperator op = build_general(pf, pm);
            StateN out = apply(op, StateN{x, y});
            return py::make_tuple(out.x, out.y);
        },
        py::arg("pf"), py::arg("pm"), py::arg("x"), py::arg("y"),
        "one step of the general sex-structured operator");
    m.def(
        "predict_limit_general",
        [](const std::vector<std::vector<std::vector<double>>>& pf,
           const std::vector<std::vector<std::vector<double>>>& pm,
           const std::vector<double>& x, const std::vector<double>& y) {
            GeneralOperator op = build_general(pf, pm);
            return prediction_dict(predict_limit_general(op, StateN{x, y}));
        },
        py::arg("pf"), py::arg("pm"), py::arg("x"), py::arg("y"));
}
