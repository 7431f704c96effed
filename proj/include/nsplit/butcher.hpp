#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsplit {

/// Explicit Runge-Kutta tableau. A is stored as the strictly lower rows
/// (row j holds a_{j,0..j-1}); weights must sum to 1 and row sums match c.
struct ButcherTableau {
    std::string name;
    std::vector<double> c;
    std::vector<double> b;
    std::vector<std::vector<double>> a;

    int stages() const { return static_cast<int>(b.size()); }
};

inline void validate_tableau(const ButcherTableau& tab) {
    const std::size_t s = tab.b.size();
    if (s == 0 || tab.c.size() != s || tab.a.size() != s)
        throw std::invalid_argument("ButcherTableau: inconsistent stage counts");
    double bsum = 0.0;
    for (double w : tab.b) bsum += w;
    if (std::abs(bsum - 1.0) > 1e-14) throw std::invalid_argument("ButcherTableau: weights must sum to 1");
    for (std::size_t j = 0; j < s; ++j) {
        if (tab.a[j].size() != j) throw std::invalid_argument("ButcherTableau: A must be strictly lower triangular");
        double rowsum = 0.0;
        for (double v : tab.a[j]) rowsum += v;
        if (std::abs(rowsum - tab.c[j]) > 1e-14)
            throw std::invalid_argument("ButcherTableau: row sums of A must equal c");
    }
}

/// Classical fourth-order method.
inline ButcherTableau rk4_tableau() {
    ButcherTableau t;
    t.name = "rk4";
    t.c = {0.0, 0.5, 0.5, 1.0};
    t.b = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    t.a = {{}, {0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}};
    return t;
}

/// Kutta's third-order method.
inline ButcherTableau kutta3_tableau() {
    ButcherTableau t;
    t.name = "kutta3";
    t.c = {0.0, 0.5, 1.0};
    t.b = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    t.a = {{}, {0.5}, {-1.0, 2.0}};
    return t;
}

}  // namespace nsplit
