#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsplit/split_ode.hpp"
#include "nsplit/stepper.hpp"

namespace nsplit {

namespace detail {

struct Dopri54 {
    // Dormand-Prince 5(4) pair, FSAL.
    static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a2[1] = {1.0 / 5};
    static constexpr double a3[2] = {3.0 / 40, 9.0 / 40};
    static constexpr double a4[3] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
    static constexpr double a5[4] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
    static constexpr double a6[5] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656};
    static constexpr double b[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
    // b - bhat, for the embedded order-4 error estimate.
    static constexpr double e[7] = {71.0 / 57600, 0.0,           -71.0 / 16695, 71.0 / 1920,
                                    -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
};

class AdaptiveRk54 {
  public:
    AdaptiveRk54(Evaluator f, double atol, double rtol) : f_(std::move(f)), atol_(atol), rtol_(rtol) {
        if (!(atol >= 1e-300) || !(rtol >= 1e-15))
            throw std::invalid_argument("reference_solve: tolerances below machine-representable range");
    }

    /// Advance y from t to t_end, adapting the step; on return k1_ holds
    /// f(t_end, y) (FSAL) when warm_ is true.
    void advance(double& t, CVector& y, double t_end) {
        const std::size_t d = y.size();
        resize(d);
        if (!warm_) {
            f_(Cplx{t, 0.0}, y, k_[0]);
            warm_ = true;
            h_ = initial_step(t, y, t_end);
        }
        int rejected = 0;
        while (t < t_end) {
            if (!(h_ > 1e-14 * std::max(1.0, std::abs(t))))
                throw blow_up_error("reference_solve: step size underflow (stiffness or blow-up)", t);
            bool clipped = false;
            double h = h_;
            if (t + h >= t_end) {
                h = t_end - t;
                clipped = true;
            }

            stage_sweep(t, y, h);
            // 5th-order solution and embedded error in one sweep.
            for (std::size_t i = 0; i < d; ++i) {
                Cplx acc = y[i];
                Cplx errc{0.0, 0.0};
                for (int j = 0; j < 6; ++j) {
                    acc += h * Dopri54::b[j] * k_[static_cast<std::size_t>(j)][i];
                    errc += h * Dopri54::e[j] * k_[static_cast<std::size_t>(j)][i];
                }
                ynew_[i] = acc;
                yerr_[i] = errc;
            }
            f_(Cplx{t + h, 0.0}, ynew_, k_[6]);
            for (std::size_t i = 0; i < d; ++i) yerr_[i] += h * Dopri54::e[6] * k_[6][i];

            double errsum = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(ynew_[i]));
                const double r = std::abs(yerr_[i]) / sc;
                errsum += r * r;
            }
            const double err = std::sqrt(errsum / static_cast<double>(d));

            const double fac11 = std::pow(std::max(err, 1e-30), expo1_);
            if (err <= 1.0) {
                const double fac = std::clamp(fac11 / std::pow(facold_, beta_) / safety_, 0.2, 5.0);
                facold_ = std::max(err, 1e-4);
                t = clipped ? t_end : t + h;
                y.swap(ynew_);
                k_[0].swap(k_[6]);  // FSAL
                double hnew = h / fac;
                if (rejected > 0) hnew = std::min(hnew, h);
                h_ = hnew;
                rejected = 0;
            } else {
                h_ = h / std::min(fac11 / safety_, 5.0);
                ++rejected;
                if (rejected > 100) throw blow_up_error("reference_solve: repeated step rejection", t);
            }
            if (++total_steps_ > 50'000'000) throw std::runtime_error("reference_solve: step budget exhausted");
        }
    }

  private:
    void resize(std::size_t d) {
        for (auto& k : k_) k.resize(d);
        ynew_.resize(d);
        yerr_.resize(d);
        work_.resize(d);
    }

    void stage_sweep(double t, const CVector& y, double h) {
        const std::size_t d = y.size();
        auto run_stage = [&](int stage, std::span<const double> row) {
            for (std::size_t i = 0; i < d; ++i) {
                Cplx acc = y[i];
                for (std::size_t j = 0; j < row.size(); ++j) acc += h * row[j] * k_[j][i];
                work_[i] = acc;
            }
            f_(Cplx{t + Dopri54::c[stage] * h, 0.0}, work_, k_[static_cast<std::size_t>(stage)]);
        };
        run_stage(1, Dopri54::a2);
        run_stage(2, Dopri54::a3);
        run_stage(3, Dopri54::a4);
        run_stage(4, Dopri54::a5);
        run_stage(5, Dopri54::a6);
    }

    double initial_step(double t, const CVector& y, double t_end) {
        const std::size_t d = y.size();
        double dn0 = 0.0, dn1 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double sc = atol_ + rtol_ * std::abs(y[i]);
            dn0 += std::norm(y[i] / sc);
            dn1 += std::norm(k_[0][i] / sc);
        }
        dn0 = std::sqrt(dn0 / d);
        dn1 = std::sqrt(dn1 / d);
        double h0 = (dn0 < 1e-10 || dn1 < 1e-10) ? 1e-6 : 0.01 * dn0 / dn1;
        h0 = std::min(h0, t_end - t);

        for (std::size_t i = 0; i < d; ++i) work_[i] = y[i] + h0 * k_[0][i];
        f_(Cplx{t + h0, 0.0}, work_, k_[1]);
        double dn2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double sc = atol_ + rtol_ * std::abs(y[i]);
            dn2 += std::norm((k_[1][i] - k_[0][i]) / sc);
        }
        dn2 = std::sqrt(dn2 / d) / h0;
        const double der = std::max(dn1, dn2);
        const double h1 = der <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / der, 0.2);
        return std::min({100.0 * h0, h1, t_end - t});
    }

    Evaluator f_;
    double atol_, rtol_;
    double h_ = 0.0;
    double facold_ = 1e-4;
    bool warm_ = false;
    long long total_steps_ = 0;
    static constexpr double beta_ = 0.04;
    static constexpr double expo1_ = 0.2 - 0.75 * beta_;
    static constexpr double safety_ = 0.9;
    CVector k_[7], ynew_, yerr_, work_;
};

}  // namespace detail

/// High-accuracy solution of dy/dt = f(t, y) at tf with an adaptive embedded
/// explicit 5(4) pair under PI step control.
inline CVector reference_solve(const Evaluator& f, double t0, const CVector& y0, double tf, double abs_tol,
                               double rel_tol) {
    if (!(tf > t0)) throw std::invalid_argument("reference_solve: tf must exceed t0");
    detail::AdaptiveRk54 solver(f, abs_tol, rel_tol);
    CVector y = y0;
    double t = t0;
    solver.advance(t, y, tf);
    return y;
}

/// Reference trajectory sampled at the given strictly increasing times.
inline std::vector<CVector> reference_samples(const Evaluator& f, double t0, const CVector& y0,
                                              std::span<const double> times, double abs_tol, double rel_tol) {
    detail::AdaptiveRk54 solver(f, abs_tol, rel_tol);
    CVector y = y0;
    double t = t0;
    std::vector<CVector> out;
    out.reserve(times.size());
    for (double target : times) {
        if (!(target > t)) throw std::invalid_argument("reference_samples: times must be increasing and past t0");
        solver.advance(t, y, target);
        out.push_back(y);
    }
    return out;
}

}  // namespace nsplit
