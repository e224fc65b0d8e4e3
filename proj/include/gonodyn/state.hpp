#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace gonodyn {

// Population state of the four-type model: x, y are the two female type
// frequencies, u, v the two male type frequencies. Coordinates may be any
// real number; the orthant analyses restrict signs themselves.
struct State4 {
    double x = 0.0;
    double y = 0.0;
    double u = 0.0;
    double v = 0.0;

    double operator[](std::size_t i) const {
        return i == 0 ? x : i == 1 ? y : i == 2 ? u : v;
    }
    double& operator[](std::size_t i) {
        return i == 0 ? x : i == 1 ? y : i == 2 ? u : v;
    }

    friend bool operator==(const State4&, const State4&) = default;
};

inline bool is_finite(const State4& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.u) &&
           std::isfinite(s.v);
}

inline double max_norm(const State4& s) {
    return std::max(std::max(std::fabs(s.x), std::fabs(s.y)),
                    std::max(std::fabs(s.u), std::fabs(s.v)));
}

inline double max_norm_diff(const State4& a, const State4& b) {
    return std::max(std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y)),
                    std::max(std::fabs(a.u - b.u), std::fabs(a.v - b.v)));
}

inline double coordinate_sum(const State4& s) { return s.x + s.y + s.u + s.v; }

// State of the general operator: eta female frequencies, nu male ones.
struct StateN {
    std::vector<double> x;  // female types
    std::vector<double> y;  // male types

    friend bool operator==(const StateN&, const StateN&) = default;
};

inline bool is_finite(const StateN& s) {
    for (double c : s.x)
        if (!std::isfinite(c)) return false;
    for (double c : s.y)
        if (!std::isfinite(c)) return false;
    return true;
}

inline double max_norm(const StateN& s) {
    double m = 0.0;
    for (double c : s.x) m = std::max(m, std::fabs(c));
    for (double c : s.y) m = std::max(m, std::fabs(c));
    return m;
}

inline double max_norm_diff(const StateN& a, const StateN& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.x.size(); ++i)
        m = std::max(m, std::fabs(a.x[i] - b.x[i]));
    for (std::size_t i = 0; i < a.y.size(); ++i)
        m = std::max(m, std::fabs(a.y[i] - b.y[i]));
    return m;
}

inline double coordinate_sum(const StateN& s) {
    double t = 0.0;
    for (double c : s.x) t += c;
    for (double c : s.y) t += c;
    return t;
}

}  // namespace gonodyn
