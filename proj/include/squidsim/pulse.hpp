// Copyright 2026 The squidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "squidsim/errors.hpp"

namespace squidsim {

using Complex = std::complex<double>;

// Complex-valued drive envelope with analytic derivative. Shapes:
//   rectangular : amplitude on [center - duration/2, center + duration/2]
//   gaussian    : amplitude * exp(-(t - center)^2 / width^2)
//   sech        : amplitude * sech((t - center) / width)
//   scaled_sum  : sum of coefficient * member envelopes
// Amplitudes are rad/ns, times ns.
class PulseEnvelope {
public:
    enum class Shape { rectangular, gaussian, sech, scaled_sum };

    static PulseEnvelope rectangular(Complex amplitude, double center, double duration) {
        if (!(duration > 0.0)) throw ValidationError("PulseEnvelope: duration must be positive");
        return PulseEnvelope(Shape::rectangular, amplitude, center, duration);
    }

    static PulseEnvelope gaussian(Complex amplitude, double center, double width) {
        if (!(width > 0.0)) throw ValidationError("PulseEnvelope: width must be positive");
        return PulseEnvelope(Shape::gaussian, amplitude, center, width);
    }

    static PulseEnvelope sech(Complex amplitude, double center, double width) {
        if (!(width > 0.0)) throw ValidationError("PulseEnvelope: width must be positive");
        return PulseEnvelope(Shape::sech, amplitude, center, width);
    }

    static PulseEnvelope scaled_sum(std::vector<std::pair<Complex, PulseEnvelope>> terms) {
        if (terms.empty()) throw ValidationError("PulseEnvelope: scaled_sum needs at least one term");
        PulseEnvelope p(Shape::scaled_sum, 0.0, 0.0, 0.0);
        p.terms_ = std::move(terms);
        return p;
    }

    Shape shape() const { return shape_; }
    Complex amplitude() const { return amplitude_; }
    double center() const { return center_; }
    double width() const { return width_; }
    const std::vector<std::pair<Complex, PulseEnvelope>>& terms() const { return terms_; }

    Complex evaluate(double t) const {
        switch (shape_) {
            case Shape::rectangular:
                return (std::abs(t - center_) <= 0.5 * width_) ? amplitude_ : Complex(0.0);
            case Shape::gaussian: {
                const double u = (t - center_) / width_;
                return amplitude_ * std::exp(-u * u);
            }
            case Shape::sech: {
                const double u = (t - center_) / width_;
                return amplitude_ / std::cosh(u);
            }
            case Shape::scaled_sum: {
                Complex sum = 0.0;
                for (const auto& [c, p] : terms_) sum += c * p.evaluate(t);
                return sum;
            }
        }
        return 0.0;
    }

    Complex operator()(double t) const { return evaluate(t); }

    // Analytic time derivative, rad/ns^2. Rectangular shapes are not
    // differentiable and are rejected.
    Complex derivative(double t) const {
        switch (shape_) {
            case Shape::rectangular:
                throw ValidationError("PulseEnvelope: derivative unsupported for rectangular shape");
            case Shape::gaussian: {
                const double u = (t - center_) / width_;
                return amplitude_ * std::exp(-u * u) * (-2.0 * u / width_);
            }
            case Shape::sech: {
                const double u = (t - center_) / width_;
                return -amplitude_ * std::tanh(u) / (std::cosh(u) * width_);
            }
            case Shape::scaled_sum: {
                Complex sum = 0.0;
                for (const auto& [c, p] : terms_) sum += c * p.derivative(t);
                return sum;
            }
        }
        return 0.0;
    }

    bool differentiable() const {
        if (shape_ == Shape::rectangular) return false;
        if (shape_ != Shape::scaled_sum) return true;
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto& t) { return t.second.differentiable(); });
    }

    PulseEnvelope shifted(double s) const {
        if (shape_ == Shape::scaled_sum) {
            std::vector<std::pair<Complex, PulseEnvelope>> terms;
            terms.reserve(terms_.size());
            for (const auto& [c, p] : terms_) terms.emplace_back(c, p.shifted(s));
            return scaled_sum(std::move(terms));
        }
        PulseEnvelope p = *this;
        p.center_ += s;
        return p;
    }

    PulseEnvelope scaled(Complex c) const {
        if (shape_ == Shape::scaled_sum) {
            std::vector<std::pair<Complex, PulseEnvelope>> terms = terms_;
            for (auto& [coeff, p] : terms) coeff *= c;
            return scaled_sum(std::move(terms));
        }
        PulseEnvelope p = *this;
        p.amplitude_ *= c;
        return p;
    }

    // Largest |envelope| over [t0, t1], sampled on a uniform grid.
    double max_abs(double t0, double t1, int samples = 4001) const {
        double best = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double t = t0 + (t1 - t0) * static_cast<double>(i) / (samples - 1);
            best = std::max(best, std::abs(evaluate(t)));
        }
        return best;
    }

    // Interval outside which |envelope| is negligible (< 1e-12 relative).
    // Gaussians are truncated at 8 widths, sech at 30.
    std::pair<double, double> support() const {
        switch (shape_) {
            case Shape::rectangular:
                return {center_ - 0.5 * width_, center_ + 0.5 * width_};
            case Shape::gaussian:
                return {center_ - 8.0 * width_, center_ + 8.0 * width_};
            case Shape::sech:
                return {center_ - 30.0 * width_, center_ + 30.0 * width_};
            case Shape::scaled_sum: {
                double lo = terms_.front().second.support().first;
                double hi = terms_.front().second.support().second;
                for (const auto& [c, p] : terms_) {
                    lo = std::min(lo, p.support().first);
                    hi = std::max(hi, p.support().second);
                }
                return {lo, hi};
            }
        }
        return {0.0, 0.0};
    }

    // Split points for quadrature inside (t0, t1): rectangular edges (exact
    // discontinuities) and per-member support edges (so a narrow member in a
    // wide window still gets resolved).
    void collect_breakpoints(double t0, double t1, std::vector<double>& pts) const {
        if (shape_ == Shape::scaled_sum) {
            for (const auto& [c, p] : terms_) p.collect_breakpoints(t0, t1, pts);
            return;
        }
        const auto [lo, hi] = support();
        for (const double e : {lo, hi}) {
            if (e > t0 && e < t1) pts.push_back(e);
        }
    }

private:
    PulseEnvelope(Shape s, Complex a, double c, double w)
        : shape_(s), amplitude_(a), center_(c), width_(w) {}

    Shape shape_;
    Complex amplitude_;
    double center_;
    double width_;  // duration for rectangular
    std::vector<std::pair<Complex, PulseEnvelope>> terms_;
};

namespace detail {

// Composite Simpson with panel doubling until the relative change converges.
template <typename F>
double simpson_converge(const F& f, double a, double b, double rel_tol) {
    if (b <= a) return 0.0;
    double prev = 0.0;
    for (int n = 128; n <= (1 << 22); n *= 2) {
        const double h = (b - a) / n;
        double sum = f(a) + f(b);
        for (int i = 1; i < n; ++i) sum += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
        const double cur = sum * h / 3.0;
        if (n > 128 && std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) {
            return cur;
        }
        prev = cur;
    }
    return prev;
}

inline bool rectangular_only(const PulseEnvelope& p) {
    if (p.shape() == PulseEnvelope::Shape::rectangular) return true;
    if (p.shape() != PulseEnvelope::Shape::scaled_sum) return false;
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto& t) { return rectangular_only(t.second); });
}

}  // namespace detail

// Integral of |p(t)|^2 over [t_i, t_f], rad^2/ns. Piecewise-constant
// envelopes are integrated exactly; everything else by quadrature to 1e-10
// relative, split at rectangular edges.
inline double abs_square_integral(const PulseEnvelope& p, double t_i, double t_f) {
    if (!(t_f > t_i)) throw ValidationError("abs_square_integral: t_f must exceed t_i");

    std::vector<double> pts{t_i};
    p.collect_breakpoints(t_i, t_f, pts);
    pts.push_back(t_f);
    std::sort(pts.begin(), pts.end());

    const auto [lo, hi] = p.support();
    const bool exact = detail::rectangular_only(p);
    const auto f = [&p](double t) { return std::norm(p.evaluate(t)); };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k];
        const double b = pts[k + 1];
        if (!(b > a)) continue;
        if (b <= lo || a >= hi) continue;  // envelope negligible here
        if (exact) {
            total += f(0.5 * (a + b)) * (b - a);  // constant on each piece
        } else {
            total += detail::simpson_converge(f, a, b, 1e-10);
        }
    }
    return total;
}

}  // namespace squidsim
