#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cli/svg.hpp"
#include "cli/table.hpp"
#include "gonodyn/errors.hpp"
#include "gonodyn/evolution.hpp"
#include "gonodyn/fixed_points.hpp"
#include "gonodyn/io.hpp"
#include "gonodyn/limits.hpp"
#include "gonodyn/params.hpp"
#include "gonodyn/spectral.hpp"
#include "gonodyn/state.hpp"

namespace gonodyn::cli {

namespace {

constexpr long kMaxGridPoints = 10'000'000;
constexpr long kMaxSvgCells = 250'000;

struct Opts {
    std::string params_path, preset, state, grid, sweep, out, format = "csv";
    int steps = -1;  // -1: command decides its default
    bool seed_search = false;
};

AnyParams resolve_params(const Opts& o) {
    if (!o.preset.empty()) {
        auto p = preset_params(o.preset);
        if (!p) {
            std::string names;
            for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
            throw ConfigError("unknown preset '" + o.preset + "' (available: " + names + ")");
        }
        return *p;
    }
    if (!o.params_path.empty()) {
        // A literal JSON object doubles as an inline parameter source.
        if (o.params_path.front() == '{') return parse_params_json(o.params_path);
        return load_params_file(o.params_path);
    }
    throw ConfigError("exactly one of --preset or --params is required");
}

HemophiliaParams require_four_type(const AnyParams& p, const char* cmd) {
    if (const auto* h = std::get_if<HemophiliaParams>(&p)) return *h;
    throw ConfigError(std::string(cmd) +
                      " requires the four-type operator (11 named coefficients)");
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> vals;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            size_t used = 0;
            vals.push_back(std::stod(tok, &used));
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
                ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + ": bad number '" + tok +
                              "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return vals;
}

State4 parse_state4(const std::string& text) {
    auto vals = parse_double_list(text, "--state");
    if (vals.size() != 4)
        throw ConfigError("--state needs four comma-separated values x,y,u,v");
    return {vals[0], vals[1], vals[2], vals[3]};
}

StateN parse_state_n(const std::string& text, const GeneralOperator& op) {
    auto vals = parse_double_list(text, "--state");
    if (vals.size() != op.eta() + op.nu())
        throw ConfigError("--state needs " + std::to_string(op.eta() + op.nu()) +
                          " values for this operator (" + std::to_string(op.eta()) +
                          " female + " + std::to_string(op.nu()) + " male)");
    StateN s;
    s.x.assign(vals.begin(), vals.begin() + static_cast<long>(op.eta()));
    s.y.assign(vals.begin() + static_cast<long>(op.eta()), vals.end());
    return s;
}

// One axis of a --grid / --sweep spec: "name=lo:hi:count" (count points,
// endpoints included) or "name=value" (pinned).
struct AxisSpec {
    std::string name;
    double lo = 0, hi = 0;
    long count = 1;

    double at(long i) const {
        return count > 1 ? lo + (hi - lo) * double(i) / double(count - 1) : lo;
    }
    bool ranged() const { return count > 1; }
};

std::vector<AxisSpec> parse_axes(const std::string& spec, const char* flag) {
    if (spec.empty()) throw ConfigError(std::string(flag) + " spec is empty");
    std::vector<AxisSpec> axes;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string item =
            spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError(std::string(flag) + " entry '" + item +
                              "' is not name=value or name=lo:hi:count");
        AxisSpec ax;
        ax.name = item.substr(0, eq);
        std::string rest = item.substr(eq + 1);
        size_t c1 = rest.find(':');
        try {
            if (c1 == std::string::npos) {
                ax.lo = ax.hi = std::stod(rest);
            } else {
                size_t c2 = rest.find(':', c1 + 1);
                if (c2 == std::string::npos) throw std::invalid_argument(rest);
                ax.lo = std::stod(rest.substr(0, c1));
                ax.hi = std::stod(rest.substr(c1 + 1, c2 - c1 - 1));
                ax.count = std::stol(rest.substr(c2 + 1));
            }
        } catch (const std::exception&) {
            throw ConfigError(std::string(flag) + " entry '" + item + "' has a bad number");
        }
        if (ax.count < 1)
            throw ConfigError(std::string(flag) + " entry '" + item +
                              "' needs a point count >= 1");
        if (ax.count > kMaxGridPoints)
            throw ConfigError(std::string(flag) + " entry '" + item + "' exceeds " +
                              std::to_string(kMaxGridPoints) + " points");
        if (ax.count > 1 && !(ax.hi > ax.lo))
            throw ConfigError(std::string(flag) + " entry '" + item +
                              "' needs positive extent (hi > lo)");
        if (ax.count == 1) ax.hi = ax.lo;
        for (const auto& other : axes)
            if (other.name == ax.name)
                throw ConfigError(std::string(flag) + " names '" + ax.name + "' twice");
        axes.push_back(std::move(ax));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return axes;
}

long worker_count(long total) {
    unsigned hw = std::thread::hardware_concurrency();
    long n = std::min<long>(hw ? hw : 1, std::max<long>(total, 1));
    if (const char* env = std::getenv("GONODYN_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || cap < 1)
            throw ConfigError("GONODYN_THREADS must be a positive integer");
        n = std::min(n, cap);
    }
    return n;
}

// Index-parallel map; f(i) must depend on i alone so the result is
// deterministic regardless of worker count.
template <class F>
void parallel_for(long total, F&& f) {
    long workers = worker_count(total);
    if (workers <= 1) {
        for (long i = 0; i < total; ++i) f(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> bail{false};
    std::mutex mu;
    std::exception_ptr first_error;
    auto body = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= total || bail.load()) break;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
                bail.store(true);
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (long w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

void emit(const std::string& out_path, const std::string& text, std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + out_path);
    f << text;
    f.close();
    if (!f.good()) throw ConfigError("failed writing output file: " + out_path);
}

void emit_table(const Opts& o, const Table& t, std::ostream& fallback) {
    emit(o.out, o.format == "json" ? to_json(t) : to_csv(t), fallback);
}

void require_tabular_format(const Opts& o, const char* cmd) {
    if (o.format == "svg")
        throw ConfigError(std::string(cmd) + " does not support --format svg");
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

// Every nonzero fixed point we report must satisfy the cubic-factor
// identity; a violation means the engine is lying somewhere, so abort.
void check_reported_identity(const HemophiliaParams& p, const FixedPoint& fp) {
    if (fp.form == FixedPointForm::Origin) return;
    CharCoeffs c = char_coeffs(p, fp.state);
    double gap = std::abs(8 - 4 * c.p1 + 2 * c.p2 + c.p3);
    if (gap > 1e-8)
        throw InternalCheckError(
            "coefficient identity violated at a reported fixed point (" + fmt_g17(fp.state.x) +
            "," + fmt_g17(fp.state.y) + "," + fmt_g17(fp.state.u) + "," + fmt_g17(fp.state.v) +
            "): gap " + fmt_g17(gap));
}

void append_spectrum_cells(std::vector<Cell>& row, const FixedPoint& fp) {
    for (int i = 0; i < 4; ++i) {
        row.push_back(fp.spectrum->values[i].real());
        row.push_back(fp.spectrum->values[i].imag());
    }
    row.push_back(to_string(fp.stability->tag));
}

std::vector<std::string> spectrum_columns() {
    std::vector<std::string> cols;
    for (int i = 1; i <= 4; ++i) {
        cols.push_back("lambda" + std::to_string(i) + "_re");
        cols.push_back("lambda" + std::to_string(i) + "_im");
    }
    cols.push_back("class");
    return cols;
}

std::vector<FixedPoint> collect_fixed_points(const HemophiliaParams& p, bool seed_search) {
    std::vector<FixedPoint> fps = closed_form_fixed_points(p);
    if (seed_search) {
        for (auto& fp : solve_interior_fixed_points(p)) fps.push_back(std::move(fp));
    }
    for (auto& fp : fps) {
        annotate(p, fp);
        check_reported_identity(p, fp);
    }
    return fps;
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const Opts& o, std::ostream& out) {
    if (o.state.empty()) throw ConfigError("simulate requires --state");
    int steps = o.steps < 0 ? 100 : o.steps;
    AnyParams params = resolve_params(o);

    Table t;
    std::vector<Series> series;
    if (const auto* h = std::get_if<HemophiliaParams>(&params)) {
        State4 t0 = parse_state4(o.state);
        Trajectory<State4> tr = iterate(*h, t0, steps);
        t.columns = {"n", "x", "y", "u", "v"};
        series = {{"x", {}}, {"y", {}}, {"u", {}}, {"v", {}}};
        for (size_t n = 0; n < tr.states.size(); ++n) {
            const State4& s = tr.states[n];
            t.rows.push_back({static_cast<long long>(n), s.x, s.y, s.u, s.v});
            for (int c = 0; c < 4; ++c) series[size_t(c)].values.push_back(s[size_t(c)]);
        }
        t.footers.emplace_back("termination", to_string(tr.termination));
    } else {
        const auto& op = std::get<GeneralOperator>(params);
        StateN t0 = parse_state_n(o.state, op);
        Trajectory<StateN> tr = iterate(op, t0, steps);
        t.columns = {"n"};
        for (size_t i = 1; i <= op.eta(); ++i) t.columns.push_back("x" + std::to_string(i));
        for (size_t i = 1; i <= op.nu(); ++i) t.columns.push_back("y" + std::to_string(i));
        for (size_t c = 1; c < t.columns.size(); ++c) series.push_back({t.columns[c], {}});
        for (size_t n = 0; n < tr.states.size(); ++n) {
            const StateN& s = tr.states[n];
            std::vector<Cell> row{static_cast<long long>(n)};
            size_t c = 0;
            for (double val : s.x) row.emplace_back(val), series[c++].values.push_back(val);
            for (double val : s.y) row.emplace_back(val), series[c++].values.push_back(val);
            t.rows.push_back(std::move(row));
        }
        t.footers.emplace_back("termination", to_string(tr.termination));
    }

    if (o.format == "svg") {
        std::string title = "trajectory (termination: " + t.footers[0].second + ")";
        emit(o.out, line_plot_svg(title, series), out);
    } else {
        emit_table(o, t, out);
    }
}

// ------------------------------------------------------------ fixed-points

void cmd_fixed_points(const Opts& o, std::ostream& out) {
    require_tabular_format(o, "fixed-points");
    HemophiliaParams p = require_four_type(resolve_params(o), "fixed-points");

    Table t;
    t.columns = {"form", "x", "y", "u", "v", "residual"};
    for (auto& c : spectrum_columns()) t.columns.push_back(c);
    for (const FixedPoint& fp : collect_fixed_points(p, o.seed_search)) {
        std::vector<Cell> row{to_string(fp.form), fp.state.x, fp.state.y,
                              fp.state.u,         fp.state.v, fp.residual};
        append_spectrum_cells(row, fp);
        t.rows.push_back(std::move(row));
    }
    emit_table(o, t, out);
}

// ---------------------------------------------------------------- classify

void cmd_classify(const Opts& o, std::ostream& out) {
    require_tabular_format(o, "classify");
    HemophiliaParams p = require_four_type(resolve_params(o), "classify");

    std::vector<FixedPoint> fps;
    if (!o.state.empty()) {
        State4 s = parse_state4(o.state);
        double r = residual(p, s);
        if (!(r <= kFixedPointResidualTol))
            throw ConfigError("--state is not a fixed point (residual " + fmt_g17(r) + ")");
        FixedPoint fp{s, detect_form(s), r, {}, {}};
        annotate(p, fp);
        check_reported_identity(p, fp);
        fps.push_back(std::move(fp));
    } else {
        fps = collect_fixed_points(p, o.seed_search);
    }

    Table t;
    t.columns = {"x", "y", "u", "v", "form"};
    for (auto& c : spectrum_columns()) t.columns.push_back(c);
    for (const FixedPoint& fp : fps) {
        std::vector<Cell> row{fp.state.x, fp.state.y, fp.state.u, fp.state.v,
                              to_string(fp.form)};
        append_spectrum_cells(row, fp);
        t.rows.push_back(std::move(row));
    }
    emit_table(o, t, out);
}

// ----------------------------------------------------------------- predict

void cmd_predict(const Opts& o, std::ostream& out) {
    require_tabular_format(o, "predict");
    if (o.state.empty()) throw ConfigError("predict requires --state");
    AnyParams params = resolve_params(o);

    Table t;
    if (const auto* h = std::get_if<HemophiliaParams>(&params)) {
        State4 s = parse_state4(o.state);
        LimitPrediction pred = predict_limit(*h, s);
        t.columns = {"x",       "y",       "u",       "v",       "region",  "outcome",
                     "justification", "detail",  "point_x", "point_y", "point_u", "point_v"};
        std::vector<Cell> row{s.x,
                              s.y,
                              s.u,
                              s.v,
                              classify_region(s, *h).to_string(),
                              to_string(pred.outcome),
                              to_string(pred.kind),
                              pred.detail};
        for (int i = 0; i < 4; ++i)
            row.push_back(pred.point ? Cell((*pred.point)[size_t(i)]) : Cell(nullptr));
        t.rows.push_back(std::move(row));
    } else {
        const auto& op = std::get<GeneralOperator>(params);
        StateN s = parse_state_n(o.state, op);
        LimitPrediction pred = predict_limit_general(op, s);
        for (size_t i = 1; i <= op.eta(); ++i) t.columns.push_back("x" + std::to_string(i));
        for (size_t i = 1; i <= op.nu(); ++i) t.columns.push_back("y" + std::to_string(i));
        t.columns.insert(t.columns.end(), {"outcome", "justification", "detail"});
        std::vector<Cell> row;
        for (double c : s.x) row.emplace_back(c);
        for (double c : s.y) row.emplace_back(c);
        row.emplace_back(to_string(pred.outcome));
        row.emplace_back(to_string(pred.kind));
        row.emplace_back(pred.detail);
        t.rows.push_back(std::move(row));
    }
    emit_table(o, t, out);
}

// ------------------------------------------------------------------- basin

const char* kBasinOutcomes[4] = {"Origin", "Point", "Blowup", "Undecided"};

int basin_class(LimitOutcome o) {
    switch (o) {
        case LimitOutcome::ConvergesToOrigin: return 0;
        case LimitOutcome::ConvergesToPoint: return 1;
        case LimitOutcome::Diverges: return 2;
        case LimitOutcome::Unknown: return 3;
    }
    return 3;
}

int basin_class(SimOutcomeKind k) {
    switch (k) {
        case SimOutcomeKind::Origin: return 0;
        case SimOutcomeKind::Point: return 1;
        case SimOutcomeKind::Blowup: return 2;
        case SimOutcomeKind::Undecided: return 3;
    }
    return 3;
}

void cmd_basin(const Opts& o, std::ostream& out) {
    HemophiliaParams p = require_four_type(resolve_params(o), "basin");
    if (o.grid.empty()) throw ConfigError("basin requires --grid");
    std::vector<AxisSpec> axes = parse_axes(o.grid, "--grid");

    const char* coord_names[4] = {"x", "y", "u", "v"};
    std::array<const AxisSpec*, 4> by_coord{};
    for (const auto& ax : axes) {
        bool known = false;
        for (int c = 0; c < 4; ++c)
            if (ax.name == coord_names[c]) {
                by_coord[size_t(c)] = &ax;
                known = true;
            }
        if (!known)
            throw ConfigError("--grid axis '" + ax.name + "' is not one of x,y,u,v");
    }
    for (int c = 0; c < 4; ++c)
        if (!by_coord[size_t(c)])
            throw ConfigError(std::string("--grid must pin or range every coordinate; '") +
                              coord_names[c] + "' is missing");
    std::vector<const AxisSpec*> ranged;
    for (const auto& ax : axes)
        if (ax.ranged()) ranged.push_back(&ax);
    if (ranged.size() != 2)
        throw ConfigError("basin needs exactly two ranged coordinates (got " +
                          std::to_string(ranged.size()) + ")");
    long c0 = ranged[0]->count, c1 = ranged[1]->count;
    long total = c0 * c1;
    if (total > kMaxGridPoints)
        throw ConfigError("grid has " + std::to_string(total) + " points; limit is " +
                          std::to_string(kMaxGridPoints));
    if (o.format == "svg" && total > kMaxSvgCells)
        throw ConfigError("svg heat maps support at most " + std::to_string(kMaxSvgCells) +
                          " cells");
    int sim_budget = o.steps < 0 ? 200 : o.steps;

    struct Rec {
        State4 t;
        int cls = 3;
        int steps = 0;
        std::string just;
    };
    std::vector<Rec> recs(static_cast<size_t>(total));

    parallel_for(total, [&](long i) {
        long i0 = i / c1, i1 = i % c1;
        State4 t0;
        for (int c = 0; c < 4; ++c) {
            const AxisSpec* ax = by_coord[size_t(c)];
            long step = ax == ranged[0] ? i0 : ax == ranged[1] ? i1 : 0;
            t0[size_t(c)] = ax->at(step);
        }
        LimitPrediction pred = predict_limit(p, t0);
        SimOutcome sim = simulate_until(p, t0, sim_budget);
        Rec r;
        r.t = t0;
        r.steps = sim.steps;
        if (pred.outcome != LimitOutcome::Unknown) {
            r.cls = basin_class(pred.outcome);
            r.just = pred.detail;
            if (sim.kind != SimOutcomeKind::Undecided && basin_class(sim.kind) != r.cls)
                throw InternalCheckError(
                    std::string("prediction ") + to_string(pred.outcome) + " (" + pred.detail +
                    ") contradicts simulation " + to_string(sim.kind) + " at grid index " +
                    std::to_string(i) + ", state (" + fmt_g17(t0.x) + "," + fmt_g17(t0.y) +
                    "," + fmt_g17(t0.u) + "," + fmt_g17(t0.v) + ")");
        } else {
            r.cls = basin_class(sim.kind);
        }
        recs[static_cast<size_t>(i)] = std::move(r);
    });

    if (o.format == "svg") {
        HeatAxis ax0{ranged[0]->name, ranged[0]->lo, ranged[0]->hi, int(c0)};
        HeatAxis ax1{ranged[1]->name, ranged[1]->lo, ranged[1]->hi, int(c1)};
        std::vector<int> cells(recs.size());
        for (size_t i = 0; i < recs.size(); ++i) cells[i] = recs[i].cls;
        std::vector<std::string> labels(kBasinOutcomes, kBasinOutcomes + 4);
        std::vector<std::string> palette{"#4472c4", "#55a868", "#c44e52", "#b3b3b3"};
        emit(o.out,
             heat_map_svg("basin of attraction (" + ax0.name + ", " + ax1.name + " slice)",
                          ax0, ax1, cells, labels, palette),
             out);
        return;
    }

    Table t;
    t.columns = {"index", "x", "y", "u", "v", "outcome", "steps", "justification"};
    for (long i = 0; i < total; ++i) {
        const Rec& r = recs[static_cast<size_t>(i)];
        t.rows.push_back({i, r.t.x, r.t.y, r.t.u, r.t.v, kBasinOutcomes[r.cls],
                          static_cast<long long>(r.steps), r.just});
    }
    emit_table(o, t, out);
}

// ------------------------------------------------------------------- sweep

struct ParamField {
    const char* name;
    double HemophiliaParams::* ptr;
    int group;
};

constexpr ParamField kFields[] = {
    {"a1", &HemophiliaParams::a1, 0}, {"a2", &HemophiliaParams::a2, 0},
    {"c1", &HemophiliaParams::c1, 1}, {"c2", &HemophiliaParams::c2, 1},
    {"b1", &HemophiliaParams::b1, 2}, {"b2", &HemophiliaParams::b2, 2},
    {"b3", &HemophiliaParams::b3, 2}, {"b4", &HemophiliaParams::b4, 2},
    {"d1", &HemophiliaParams::d1, 3}, {"d2", &HemophiliaParams::d2, 3},
    {"d3", &HemophiliaParams::d3, 3},
};

const ParamField& find_field(const std::string& name) {
    for (const ParamField& f : kFields)
        if (name == f.name) return f;
    throw ConfigError("unknown parameter '" + name + "' in sweep spec");
}

// Sets one coefficient and rescales the free members of its normalization
// group proportionally so the group still sums to 1. Members already set
// by an earlier sweep axis are held fixed. Returns false when no
// nonnegative rebalancing exists.
bool rebalance(HemophiliaParams& p, const ParamField& f, double v,
               const std::vector<const ParamField*>& held) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
    double rest_target = 1.0 - v;
    double rest_sum = 0.0;
    std::vector<const ParamField*> free_fields;
    for (const ParamField& g : kFields) {
        if (g.group != f.group || g.ptr == f.ptr) continue;
        bool is_held = false;
        for (const ParamField* h : held) is_held = is_held || h->ptr == g.ptr;
        if (is_held) {
            rest_target -= p.*(g.ptr);
        } else {
            free_fields.push_back(&g);
            rest_sum += p.*(g.ptr);
        }
    }
    if (rest_target < -kNormalizationTol) return false;
    rest_target = std::max(rest_target, 0.0);
    if (rest_sum <= 0.0) {
        if (rest_target > kNormalizationTol) return false;
    } else {
        double scale = rest_target / rest_sum;
        for (const ParamField* g : free_fields) p.*(g->ptr) *= scale;
    }
    p.*(f.ptr) = v;
    return true;
}

struct FormSpec {
    FixedPointForm form;
    const char* tag;
};

constexpr FormSpec kSweepForms[] = {
    {FixedPointForm::BothAxes, "both_axes"},
    {FixedPointForm::CarrierAxis, "carrier_axis"},
    {FixedPointForm::MixedAxis, "mixed_axis"},
};

void cmd_sweep(const Opts& o, std::ostream& out) {
    require_tabular_format(o, "sweep");
    HemophiliaParams base = require_four_type(resolve_params(o), "sweep");
    std::string spec = !o.sweep.empty() ? o.sweep : o.grid;
    if (spec.empty()) throw ConfigError("sweep requires --sweep (or --grid) with 1-2 parameters");
    std::vector<AxisSpec> axes = parse_axes(spec, "--sweep");
    if (axes.size() < 1 || axes.size() > 2)
        throw ConfigError("sweep varies one or two parameters (got " +
                          std::to_string(axes.size()) + ")");
    std::vector<const ParamField*> fields;
    for (const auto& ax : axes) fields.push_back(&find_field(ax.name));

    long total = 1;
    for (const auto& ax : axes) total *= ax.count;
    if (total > kMaxGridPoints)
        throw ConfigError("sweep has " + std::to_string(total) + " rows; limit is " +
                          std::to_string(kMaxGridPoints));

    struct FormCells {
        bool exists = false;
        std::optional<std::string> klass;
        std::optional<CharCoeffs> coeffs;
    };
    struct Row {
        std::vector<double> values;
        bool valid = false;
        std::array<FormCells, 3> forms{};
    };
    std::vector<Row> rows(static_cast<size_t>(total));

    parallel_for(total, [&](long i) {
        Row row;
        HemophiliaParams p = base;
        std::vector<const ParamField*> held;
        bool ok = true;
        long rem = i;
        for (size_t a = axes.size(); a-- > 0;) {
            // row-major: the first axis is the slowest index
            long step = rem % axes[a].count;
            rem /= axes[a].count;
            row.values.insert(row.values.begin(), axes[a].at(step));
        }
        for (size_t a = 0; a < axes.size(); ++a) {
            ok = ok && rebalance(p, *fields[a], row.values[a], held);
            held.push_back(fields[a]);
        }
        ok = ok && validate(p).ok();
        row.valid = ok;
        if (ok) {
            auto fps = closed_form_fixed_points(p);
            for (size_t fi = 0; fi < 3; ++fi) {
                for (const auto& fp : fps) {
                    if (fp.form != kSweepForms[fi].form) continue;
                    row.forms[fi].exists = true;
                    try {
                        row.forms[fi].coeffs = char_coeffs(p, fp.state);
                        row.forms[fi].klass = to_string(classify(p, fp).tag);
                    } catch (const Error&) {
                        // coefficients too extreme to certify the point numerically
                        row.forms[fi].klass = "unresolved";
                    }
                }
            }
        }
        rows[static_cast<size_t>(i)] = std::move(row);
    });

    Table t;
    for (const auto& ax : axes) t.columns.push_back(ax.name);
    t.columns.push_back("valid");
    for (const auto& fs : kSweepForms) {
        std::string tag = fs.tag;
        t.columns.push_back(tag + "_exists");
        t.columns.push_back(tag + "_class");
        t.columns.push_back(tag + "_p1");
        t.columns.push_back(tag + "_p2");
        t.columns.push_back(tag + "_p3");
    }
    for (const Row& row : rows) {
        std::vector<Cell> cells;
        for (double v : row.values) cells.emplace_back(v);
        cells.emplace_back(row.valid);
        for (const FormCells& fc : row.forms) {
            if (!row.valid) {
                for (int k = 0; k < 5; ++k) cells.emplace_back(nullptr);
                continue;
            }
            cells.emplace_back(fc.exists);
            cells.emplace_back(fc.klass ? Cell(*fc.klass) : Cell(nullptr));
            if (fc.coeffs) {
                cells.emplace_back(fc.coeffs->p1);
                cells.emplace_back(fc.coeffs->p2);
                cells.emplace_back(fc.coeffs->p3);
            } else {
                for (int k = 0; k < 3; ++k) cells.emplace_back(nullptr);
            }
        }
        t.rows.push_back(std::move(cells));
    }
    emit_table(o, t, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gonosomal evolution operator toolkit"};
    app.name("gonodyn");
    app.require_subcommand(1);

    Opts o;
    auto add_source = [&](CLI::App* cmd) {
        auto* params = cmd->add_option("--params", o.params_path,
                                       "parameter file (JSON), or an inline JSON object");
        auto* preset = cmd->add_option("--preset", o.preset, "built-in parameter set");
        params->excludes(preset);
        cmd->add_option("--out", o.out, "output file (stdout when omitted)");
        return cmd;
    };
    auto add_format = [&](CLI::App* cmd, bool with_svg) {
        std::vector<std::string> choices = {"csv", "json"};
        if (with_svg) choices.push_back("svg");
        cmd->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember(choices));
    };

    CLI::App* sim = add_source(app.add_subcommand("simulate", "iterate the operator"));
    sim->add_option("--state", o.state, "initial point x,y,u,v");
    sim->add_option("--steps", o.steps, "number of steps (default 100)")
        ->check(CLI::NonNegativeNumber);
    add_format(sim, true);

    CLI::App* fps = add_source(
        app.add_subcommand("fixed-points", "closed-form (and optionally Newton) fixed points"));
    fps->add_flag("--seed-search", o.seed_search, "also run the seeded Newton search");
    add_format(fps, false);

    CLI::App* cls = add_source(
        app.add_subcommand("classify", "spectrum and stability class of fixed points"));
    cls->add_option("--state", o.state, "classify this fixed point instead of searching");
    cls->add_flag("--seed-search", o.seed_search, "also run the seeded Newton search");
    add_format(cls, false);

    CLI::App* prd = add_source(
        app.add_subcommand("predict", "predict the orbit limit of an initial point"));
    prd->add_option("--state", o.state, "initial point x,y,u,v");
    add_format(prd, false);

    CLI::App* bas = add_source(
        app.add_subcommand("basin", "map predicted limits over a 2-D grid slice"));
    bas->add_option("--grid", o.grid,
                    "slice spec, e.g. x=0:5:100,u=0:5:100,y=0,v=0 (two ranged, two pinned)");
    bas->add_option("--steps", o.steps, "simulation cross-check budget (default 200)")
        ->check(CLI::NonNegativeNumber);
    add_format(bas, true);

    CLI::App* swp = add_source(app.add_subcommand(
        "sweep", "track fixed-point existence and class over a parameter range"));
    swp->add_option("--sweep,--grid", o.sweep,
                    "range spec, e.g. c1=0:1:201 (groups rebalanced proportionally)");
    add_format(swp, false);

    std::vector<const char*> argv;
    argv.push_back("gonodyn");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) cmd_simulate(o, out);
        if (fps->parsed()) cmd_fixed_points(o, out);
        if (cls->parsed()) cmd_classify(o, out);
        if (prd->parsed()) cmd_predict(o, out);
        if (bas->parsed()) cmd_basin(o, out);
        if (swp->parsed()) cmd_sweep(o, out);
        return 0;
    } catch (const InternalCheckError& e) {
        err << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const IdentityViolatedError& e) {
        err << "internal check failed: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return 3;
    }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace gonodyn::cli
