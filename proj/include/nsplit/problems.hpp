#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsplit/split_ode.hpp"

namespace nsplit {

/// Uniform boundary-inclusive grid on [0,1]^2 with lexicographic flattening
/// and ghost-node reflection for homogeneous Neumann stencils.
struct Grid2D {
    int m = 0;  // cells per side; m+1 nodes per side

    explicit Grid2D(int cells) : m(cells) {
        if (m < 2) throw std::invalid_argument("Grid2D: need at least 2 cells per side");
    }

    int nodes_per_side() const { return m + 1; }
    int size() const { return (m + 1) * (m + 1); }
    double dx() const { return 1.0 / m; }
    int index(int i, int j) const { return j * (m + 1) + i; }
    double coord(int i) const { return static_cast<double>(i) * dx(); }
    int reflect(int i) const { return i < 0 ? -i : (i > m ? 2 * m - i : i); }
};

/// 2D advection-diffusion-reaction setup: du/dt = -alpha (u_x + u_y)
/// + eps (u_xx + u_yy) + gamma u (u - 1/2)(1 - u) on [0,1]^2 with
/// homogeneous Neumann boundaries.
struct AdrConfig {
    double alpha = -10.0;
    double epsilon = 0.01;
    double gamma = 100.0;
    int m = 40;  // grid cells per side (dx = 1/m)
    double t0 = 0.0;
    double tf = 0.1;
};

/// Initial field u(x,y,0) = 256 (x y (1-x)(1-y))^2 + 0.3 sampled at the nodes.
inline CVector adr_initial(const AdrConfig& cfg) {
    const Grid2D g(cfg.m);
    CVector u(static_cast<std::size_t>(g.size()));
    const auto hump = [&g](int i) {
        const double x = g.coord(i);
        return x * (1.0 - x);
    };
    for (int j = 0; j <= g.m; ++j)
        for (int i = 0; i <= g.m; ++i) {
            const double w = hump(i) * hump(j);
            u[static_cast<std::size_t>(g.index(i, j))] = Cplx{256.0 * w * w + 0.3, 0.0};
        }
    return u;
}

/// Four-way split of the ADR right-hand side: directional advection,
/// x-diffusion, y-diffusion, pointwise cubic reaction. All difference
/// stencils reflect across the boundary (ghost u_{-1} = u_1).
inline SplitOde adr_split(const AdrConfig& cfg) {
    const Grid2D g(cfg.m);
    const double inv2dx = 1.0 / (2.0 * g.dx());
    const double invdx2 = 1.0 / (g.dx() * g.dx());
    const double minus_alpha = -cfg.alpha;
    const double eps = cfg.epsilon;
    const double gamma = cfg.gamma;

    auto advection = [g, minus_alpha, inv2dx](Cplx, const CVector& u, CVector& out) {
        out.resize(u.size());
        for (int j = 0; j <= g.m; ++j)
            for (int i = 0; i <= g.m; ++i) {
                const Cplx dx_part = u[static_cast<std::size_t>(g.index(g.reflect(i + 1), j))] -
                                     u[static_cast<std::size_t>(g.index(g.reflect(i - 1), j))];
                const Cplx dy_part = u[static_cast<std::size_t>(g.index(i, g.reflect(j + 1)))] -
                                     u[static_cast<std::size_t>(g.index(i, g.reflect(j - 1)))];
                out[static_cast<std::size_t>(g.index(i, j))] = minus_alpha * inv2dx * (dx_part + dy_part);
            }
    };
    auto diffusion_x = [g, eps, invdx2](Cplx, const CVector& u, CVector& out) {
        out.resize(u.size());
        for (int j = 0; j <= g.m; ++j)
            for (int i = 0; i <= g.m; ++i) {
                const Cplx lap = u[static_cast<std::size_t>(g.index(g.reflect(i + 1), j))] -
                                 2.0 * u[static_cast<std::size_t>(g.index(i, j))] +
                                 u[static_cast<std::size_t>(g.index(g.reflect(i - 1), j))];
                out[static_cast<std::size_t>(g.index(i, j))] = eps * invdx2 * lap;
            }
    };
    auto diffusion_y = [g, eps, invdx2](Cplx, const CVector& u, CVector& out) {
        out.resize(u.size());
        for (int j = 0; j <= g.m; ++j)
            for (int i = 0; i <= g.m; ++i) {
                const Cplx lap = u[static_cast<std::size_t>(g.index(i, g.reflect(j + 1)))] -
                                 2.0 * u[static_cast<std::size_t>(g.index(i, j))] +
                                 u[static_cast<std::size_t>(g.index(i, g.reflect(j - 1)))];
                out[static_cast<std::size_t>(g.index(i, j))] = eps * invdx2 * lap;
            }
    };
    auto reaction = [gamma](Cplx, const CVector& u, CVector& out) {
        out.resize(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            out[i] = gamma * u[i] * (u[i] - 0.5) * (1.0 - u[i]);
    };

    SplitOde ode;
    ode.n_operators = 4;
    ode.dimension = g.size();
    ode.operators = {{advection, std::nullopt},
                     {diffusion_x, std::nullopt},
                     {diffusion_y, std::nullopt},
                     {reaction, std::nullopt}};
    ode.sum = [advection, diffusion_x, diffusion_y, reaction](Cplx t, const CVector& u, CVector& out) {
        out.assign(u.size(), Cplx{0.0, 0.0});
        CVector part(u.size());
        advection(t, u, part);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] += part[i];
        diffusion_x(t, u, part);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] += part[i];
        diffusion_y(t, u, part);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] += part[i];
        reaction(t, u, part);
        for (std::size_t i = 0; i < u.size(); ++i) out[i] += part[i];
    };
    ode.reset_counters();
    return ode;
}

/// Scalar complex benchmark du/dt = i u + 0.05 u - 0.5 u^3, u(0) = 0.1,
/// solved over [0, 100] and sampled at t = 1..100.
struct ComplexOdeConfig {
    Cplx u0{0.1, 0.0};
    double t0 = 0.0;
    double tf = 100.0;
    int samples = 100;

    std::vector<double> sample_times() const {
        std::vector<double> ts(static_cast<std::size_t>(samples));
        for (int n = 1; n <= samples; ++n) ts[static_cast<std::size_t>(n - 1)] = t0 + n * (tf - t0) / samples;
        return ts;
    }
};

/// Complex 3-split of the scalar ODE: iu, 0.05 u, -0.5 u^3.
inline SplitOde complex_split(const ComplexOdeConfig&) {
    auto rotation = [](Cplx, const CVector& u, CVector& out) {
        out.resize(1);
        out[0] = Cplx{0.0, 1.0} * u[0];
    };
    auto growth = [](Cplx, const CVector& u, CVector& out) {
        out.resize(1);
        out[0] = 0.05 * u[0];
    };
    auto cubic = [](Cplx, const CVector& u, CVector& out) {
        out.resize(1);
        out[0] = -0.5 * u[0] * u[0] * u[0];
    };
    SplitOde ode;
    ode.n_operators = 3;
    ode.dimension = 1;
    ode.operators = {{rotation, std::nullopt}, {growth, std::nullopt}, {cubic, std::nullopt}};
    ode.sum = [](Cplx, const CVector& u, CVector& out) {
        out.resize(1);
        out[0] = Cplx{0.0, 1.0} * u[0] + 0.05 * u[0] - 0.5 * u[0] * u[0] * u[0];
    };
    ode.reset_counters();
    return ode;
}

/// The same ODE as a system of two equations in u = x + i y, split into the
/// rotation [-y; x], the uniform growth, and the cubic part. The cubic
/// componentwise realification of -0.5 u^3 is
///   [ 1.5 x y^2 - 0.5 x^3 ; -1.5 x^2 y + 0.5 y^3 ].
inline SplitOde realified_split(const ComplexOdeConfig&) {
    auto rotation = [](Cplx, const CVector& v, CVector& out) {
        out.resize(2);
        out[0] = -v[1];
        out[1] = v[0];
    };
    auto growth = [](Cplx, const CVector& v, CVector& out) {
        out.resize(2);
        out[0] = 0.05 * v[0];
        out[1] = 0.05 * v[1];
    };
    auto cubic = [](Cplx, const CVector& v, CVector& out) {
        out.resize(2);
        const Cplx x = v[0], y = v[1];
        out[0] = 1.5 * x * y * y - 0.5 * x * x * x;
        out[1] = -1.5 * x * x * y + 0.5 * y * y * y;
    };
    SplitOde ode;
    ode.n_operators = 3;
    ode.dimension = 2;
    ode.operators = {{rotation, std::nullopt}, {growth, std::nullopt}, {cubic, std::nullopt}};
    ode.sum = [](Cplx, const CVector& v, CVector& out) {
        out.resize(2);
        const Cplx x = v[0], y = v[1];
        out[0] = -y + 0.05 * x + 1.5 * x * y * y - 0.5 * x * x * x;
        out[1] = x + 0.05 * y - 1.5 * x * x * y + 0.5 * y * y * y;
    };
    ode.reset_counters();
    return ode;
}

/// Real-lifted initial state [Re u0; Im u0].
inline CVector realified_initial(const ComplexOdeConfig& cfg) {
    return {Cplx{cfg.u0.real(), 0.0}, Cplx{cfg.u0.imag(), 0.0}};
}

/// Map a realified state back to the scalar complex value x + i y.
inline Cplx identify_complex(const CVector& v) {
    if (v.size() != 2) throw std::invalid_argument("identify_complex: expected a 2-vector");
    return v[0] + Cplx{0.0, 1.0} * v[1];
}

/// Euclidean norm of the complex difference.
inline double l2_error(const CVector& y, const CVector& y_ref) {
    if (y.size() != y_ref.size()) throw std::invalid_argument("l2_error: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::norm(y[i] - y_ref[i]);
    return std::sqrt(s);
}

/// Mixed root-mean-square error sqrt( (1/M) sum ((ref - x)/(1+|ref|))^2 )
/// with complex deviations taken in modulus.
inline double mrms_error(std::span<const Cplx> samples, std::span<const Cplx> reference) {
    if (samples.size() != reference.size()) throw std::invalid_argument("mrms_error: sample count mismatch");
    if (samples.empty()) throw std::invalid_argument("mrms_error: empty sample list");
    double s = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double dev = std::abs(reference[i] - samples[i]) / (1.0 + std::abs(reference[i]));
        s += dev * dev;
    }
    return std::sqrt(s / static_cast<double>(samples.size()));
}

}  // namespace nsplit
