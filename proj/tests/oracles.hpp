// Copyright 2026 The gravimean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's propagators.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Coupled Ehrenfest system in oscillator units, integrated with classic RK4:
///   x±'' = -(x± - xbar) ± f_meas + f_div - gamma (x±' - xbar'),  xbar = p x+ + (1-p) x-
struct EhrenfestState {
    double x_plus = 0;
    double x_minus = 0;
    double v_plus = 0;
    double v_minus = 0;
};

inline EhrenfestState ehrenfest_rhs(const EhrenfestState &s, double p, double f_meas, double f_div, double gamma) {
    const double xbar = p * s.x_plus + (1 - p) * s.x_minus;
    const double vbar = p * s.v_plus + (1 - p) * s.v_minus;
    return {
        s.v_plus,
        s.v_minus,
        -(s.x_plus - xbar) + f_meas + f_div - gamma * (s.v_plus - vbar),
        -(s.x_minus - xbar) - f_meas + f_div - gamma * (s.v_minus - vbar),
    };
}

inline EhrenfestState axpy(const EhrenfestState &a, double h, const EhrenfestState &k) {
    return {a.x_plus + h * k.x_plus, a.x_minus + h * k.x_minus, a.v_plus + h * k.v_plus, a.v_minus + h * k.v_minus};
}

/// Integrates from t = 0 to t with n RK4 steps, calling `visit(t_i, state_i)`
/// after every step (and once at t = 0).
template <typename Visit>
EhrenfestState rk4_ehrenfest(
    EhrenfestState s, double p, double f_meas, double f_div, double gamma, double t, int n, Visit &&visit) {
    const double h = t / n;
    visit(0.0, s);
    for (int i = 0; i < n; ++i) {
        const auto k1 = ehrenfest_rhs(s, p, f_meas, f_div, gamma);
        const auto k2 = ehrenfest_rhs(axpy(s, h / 2, k1), p, f_meas, f_div, gamma);
        const auto k3 = ehrenfest_rhs(axpy(s, h / 2, k2), p, f_meas, f_div, gamma);
        const auto k4 = ehrenfest_rhs(axpy(s, h, k3), p, f_meas, f_div, gamma);
        s.x_plus += h / 6 * (k1.x_plus + 2 * k2.x_plus + 2 * k3.x_plus + k4.x_plus);
        s.x_minus += h / 6 * (k1.x_minus + 2 * k2.x_minus + 2 * k3.x_minus + k4.x_minus);
        s.v_plus += h / 6 * (k1.v_plus + 2 * k2.v_plus + 2 * k3.v_plus + k4.v_plus);
        s.v_minus += h / 6 * (k1.v_minus + 2 * k2.v_minus + 2 * k3.v_minus + k4.v_minus);
        visit((i + 1) * h, s);
    }
    return s;
}

inline EhrenfestState rk4_ehrenfest(
    EhrenfestState s, double p, double f_meas, double f_div, double gamma, double t, int n) {
    return rk4_ehrenfest(s, p, f_meas, f_div, gamma, t, n, [](double, const EhrenfestState &) {});
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)> &f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(a + i * h);
    return s * h / 3;
}

/// Direct DFT magnitude spectrum peak (index of the largest |X_k| for 1 <= k < n/2).
inline int dft_peak_bin(const std::vector<double> &samples) {
    const int n = static_cast<int>(samples.size());
    int best = 1;
    double best_mag = -1;
    for (int k = 1; k < n / 2; ++k) {
        double re = 0, im = 0;
        for (int j = 0; j < n; ++j) {
            const double ang = -2 * M_PI * k * j / n;
            re += samples[j] * std::cos(ang);
            im += samples[j] * std::sin(ang);
        }
        const double mag = re * re + im * im;
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    return best;
}

}  // namespace oracle
