// integrator.hpp — adaptive embedded Runge-Kutta (Dormand-Prince 5(4), FSAL)
// over matrix-shaped complex states, with Hairer's step controller. The state
// algebra goes through the kernels so serial/parallel execution is
// bit-identical.

#pragma once

#include "kerrbat/kernels.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kerrbat {

struct StepControl {
    double rtol = 1e-8;
    double atol = 1e-10;
    double safety = 0.9;
    double lund_beta = 0.04;
    long max_steps = 50'000'000;
    kernels::Exec exec = kernels::Exec::parallel;
};

struct IntegrationStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

// Step size underflow or step budget exhaustion under the requested tolerance.
class ToleranceFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace dopri5 {
inline constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr std::array<std::array<double, 6>, 7> kA = {{
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
}};
// b - bhat: weights of the embedded error estimate
inline constexpr std::array<double, 7> kE = {
    71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
} // namespace dopri5

// Integrates the autonomous system dy/dt = f(y). Rhs has signature
// void(const Matrix& y, Matrix& dydt).
template <class Rhs>
class AdaptiveIntegrator {
  public:
    AdaptiveIntegrator(Rhs rhs, Matrix y0, double t0, const StepControl& control)
        : rhs_(std::move(rhs)), y_(std::move(y0)), t_(t0), control_(control) {
        zero_ = Matrix::Zero(y_.rows(), y_.cols());
        for (auto& k : k_) {
            k = zero_;
        }
        ytmp_ = zero_;
        err_ = zero_;
    }

    // Advance to exactly t_target (>= current time).
    void advance_to(double t_target) {
        if (t_target < t_) {
            throw std::invalid_argument("AdaptiveIntegrator: cannot integrate backwards");
        }
        const double span = t_target - t_;
        if (span == 0.0) {
            return;
        }
        if (!have_fsal_) {
            eval(y_, k_[0]);
            have_fsal_ = true;
        }
        if (h_ <= 0.0) {
            h_ = initial_step(span);
        }

        bool last_rejected = false;
        while (t_ < t_target) {
            if (stats_.accepted + stats_.rejected >= control_.max_steps) {
                throw ToleranceFailure("step budget exhausted at t = " + std::to_string(t_));
            }
            const double eps_floor =
                64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_));
            if (h_ < eps_floor) {
                throw ToleranceFailure("step size underflow at t = " + std::to_string(t_) +
                                       " (h = " + std::to_string(h_) + ")");
            }
            const bool clipped = t_ + h_ >= t_target;
            const double h = clipped ? t_target - t_ : h_;

            const double err = attempt_step(h);
            const double fac11 = std::pow(err, expo1());
            if (err <= 1.0) {
                std::swap(y_, ytmp_);
                std::swap(k_[0], k_[6]); // FSAL
                t_ = clipped ? t_target : t_ + h;
                ++stats_.accepted;

                double fac = fac11 / std::pow(facold_, control_.lund_beta);
                fac = std::clamp(fac / control_.safety, 0.1, 5.0);
                double hnew = h / fac;
                if (last_rejected) {
                    hnew = std::min(hnew, h);
                }
                facold_ = std::max(err, 1.0e-4);
                last_rejected = false;
                if (!clipped || hnew > h_) {
                    h_ = hnew;
                }
            } else {
                h_ = h / std::min(5.0, fac11 / control_.safety);
                last_rejected = true;
                ++stats_.rejected;
            }
        }
    }

    const Matrix& state() const { return y_; }
    double time() const { return t_; }
    const IntegrationStats& stats() const { return stats_; }

    // Replace the state in place (e.g. after re-symmetrization at a sample);
    // invalidates the FSAL cache.
    void reset_state(const Matrix& y) {
        y_ = y;
        have_fsal_ = false;
    }

  private:
    double expo1() const { return 0.2 - control_.lund_beta * 0.75; }

    void eval(const Matrix& y, Matrix& dy) {
        rhs_(y, dy);
        ++stats_.rhs_evals;
    }

    // One trial step of size h; fills ytmp_ with the order-5 result and
    // returns the weighted error norm.
    double attempt_step(double h) {
        using namespace dopri5;
        std::array<double, 6> c;
        std::array<const Matrix*, 6> terms;
        for (int stage = 1; stage < 7; ++stage) {
            for (int j = 0; j < stage; ++j) {
                c[static_cast<size_t>(j)] = h * kA[static_cast<size_t>(stage)][static_cast<size_t>(j)];
                terms[static_cast<size_t>(j)] = &k_[static_cast<size_t>(j)];
            }
            kernels::linear_combination(ytmp_, y_,
                                        std::span<const double>(c.data(), static_cast<size_t>(stage)),
                                        std::span<const Matrix* const>(terms.data(),
                                                                       static_cast<size_t>(stage)),
                                        control_.exec);
            if (stage < 6) {
                eval(ytmp_, k_[static_cast<size_t>(stage)]);
            } else {
                // stage 6 builds the order-5 solution itself (a7j == bj)
                eval(ytmp_, k_[6]);
            }
        }
        std::array<double, 7> ce;
        std::array<const Matrix*, 7> te;
        for (int j = 0; j < 7; ++j) {
            ce[static_cast<size_t>(j)] = h * kE[static_cast<size_t>(j)];
            te[static_cast<size_t>(j)] = &k_[static_cast<size_t>(j)];
        }
        kernels::linear_combination(err_, zero_, ce, te, control_.exec);
        return kernels::error_norm(err_, y_, ytmp_, control_.atol, control_.rtol, control_.exec);
    }

    // Hairer's starting-step heuristic.
    double initial_step(double span) {
        const auto& ex = control_.exec;
        const double dnf =
            kernels::error_norm(k_[0], y_, y_, control_.atol, control_.rtol, ex);
        const double dny = kernels::error_norm(y_, y_, y_, control_.atol, control_.rtol, ex);
        double h0 = (!std::isfinite(dnf) || !std::isfinite(dny) || dnf <= 1e-10 || dny <= 1e-10)
                        ? 1e-6
                        : 0.01 * (dny / dnf);
        h0 = std::min(h0, span);

        const double c[1] = {h0};
        const Matrix* t[1] = {&k_[0]};
        kernels::linear_combination(ytmp_, y_, c, t, ex);
        eval(ytmp_, err_);
        const double cm[1] = {-1.0};
        const Matrix* tm[1] = {&k_[0]};
        kernels::linear_combination(err_, err_, cm, tm, ex);
        const double der2 = kernels::error_norm(err_, y_, y_, control_.atol, control_.rtol, ex) / h0;

        const double der12 = std::max(der2, dnf);
        const double h1 =
            (der12 <= 1e-15) ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / der12, 0.2);
        const double h = std::min({100.0 * h0, h1, span});
        return std::isfinite(h) && h > 0.0 ? h : 1e-6 * span;
    }

    Rhs rhs_;
    Matrix y_;
    double t_;
    StepControl control_;
    Matrix zero_, ytmp_, err_;
    std::array<Matrix, 7> k_;
    double h_ = 0.0;
    double facold_ = 1.0e-4;
    bool have_fsal_ = false;
    IntegrationStats stats_;
};

} // namespace kerrbat
