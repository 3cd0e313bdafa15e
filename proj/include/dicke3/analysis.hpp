// analysis.hpp — Time series, finite-window Fourier transforms, peak
// extraction, and series comparison metrics.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke3/model.hpp"

namespace dicke3 {

// Sampled real observable on a uniform time grid. By pipeline convention the
// grid is omega t / 2 pi, so conjugate frequencies come out in units of omega.
struct TimeSeries {
    Eigen::VectorXd times;
    Eigen::VectorXd values;
    std::string label;

    double dt() const { return times.size() > 1 ? times(1) - times(0) : 0.0; }
};

struct Spectrum {
    Eigen::VectorXd frequencies;     // ascending
    Eigen::VectorXcd amplitudes;
    std::string window;              // "rect" or "hann", plus mean-subtraction tag
};

// Trapezoid-rule evaluation of the finite-window transform
//   \int dt P(t) exp(-i 2 pi nu t)
// at each requested nu. Mean subtraction removes the DC pedestal.
inline Spectrum fourier_transform(const TimeSeries& series, const Eigen::VectorXd& nu_grid,
                                  bool subtract_mean = true, bool hann = false) {
    const int n = static_cast<int>(series.times.size());
    if (n < 2 || nu_grid.size() == 0)
        throw std::invalid_argument("fourier_transform: empty grid");
    Eigen::VectorXd v = series.values;
    if (subtract_mean) v.array() -= v.mean();
    Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
    if (hann)
        for (int i = 0; i < n; ++i)
            w(i) = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1.0)));
    w(0) *= 0.5;
    w(n - 1) *= 0.5;
    const double dt = series.dt();

    Spectrum s;
    s.frequencies = nu_grid;
    s.amplitudes.resize(nu_grid.size());
    s.window = std::string(hann ? "hann" : "rect") + (subtract_mean ? "+demean" : "");
    for (int k = 0; k < nu_grid.size(); ++k) {
        Complex acc(0.0, 0.0);
        const double om = 2.0 * M_PI * nu_grid(k);
        for (int i = 0; i < n; ++i)
            acc += w(i) * v(i) * std::exp(Complex(0.0, -om * series.times(i)));
        s.amplitudes(k) = acc * dt;
    }
    return s;
}

struct Peak {
    double frequency{0.0};
    double magnitude{0.0};
};

// Local maxima of |amplitude| with parabolic sub-bin refinement, sorted by
// magnitude. Returns what exists if fewer than `count` maxima are present.
inline std::vector<Peak> find_peaks(const Spectrum& spec, int count) {
    if (count < 1) throw std::invalid_argument("find_peaks: count must be >= 1");
    const Eigen::VectorXd mag = spec.amplitudes.cwiseAbs();
    std::vector<Peak> all;
    for (int i = 1; i + 1 < mag.size(); ++i) {
        if (mag(i) > mag(i - 1) && mag(i) >= mag(i + 1)) {
            const double den = mag(i - 1) - 2.0 * mag(i) + mag(i + 1);
            const double shift = den != 0.0 ? (mag(i - 1) - mag(i + 1)) / (2.0 * den) : 0.0;
            const double dnu = spec.frequencies(1) - spec.frequencies(0);
            all.push_back({spec.frequencies(i) + shift * dnu, mag(i)});
        }
    }
    std::sort(all.begin(), all.end(),
              [](const Peak& a, const Peak& b) { return a.magnitude > b.magnitude; });
    if (static_cast<int>(all.size()) > count) all.resize(count);
    return all;
}

// Largest peak inside [center - half, center + half].
inline Peak band_peak(const Spectrum& spec, double center, double half) {
    const Eigen::VectorXd mag = spec.amplitudes.cwiseAbs();
    Peak best{0.0, -1.0};
    for (int i = 1; i + 1 < mag.size(); ++i) {
        const double nu = spec.frequencies(i);
        if (nu < center - half || nu > center + half) continue;
        if (mag(i) >= mag(i - 1) && mag(i) >= mag(i + 1) && mag(i) > best.magnitude) {
            const double den = mag(i - 1) - 2.0 * mag(i) + mag(i + 1);
            const double shift = den != 0.0 ? (mag(i - 1) - mag(i + 1)) / (2.0 * den) : 0.0;
            best = {nu + shift * (spec.frequencies(1) - spec.frequencies(0)), mag(i)};
        }
    }
    return best;
}

// Peaks in a band that reach at least `rel` of the band maximum.
inline int count_band_peaks(const Spectrum& spec, double center, double half, double rel) {
    const Eigen::VectorXd mag = spec.amplitudes.cwiseAbs();
    double bandmax = 0.0;
    for (int i = 0; i < mag.size(); ++i)
        if (std::abs(spec.frequencies(i) - center) <= half) bandmax = std::max(bandmax, mag(i));
    int cnt = 0;
    for (int i = 1; i + 1 < mag.size(); ++i) {
        if (std::abs(spec.frequencies(i) - center) > half) continue;
        if (mag(i) > mag(i - 1) && mag(i) >= mag(i + 1) && mag(i) >= rel * bandmax) ++cnt;
    }
    return cnt;
}

// ------------------------------------------------------------- comparisons

struct SeriesMetrics {
    double rms{0.0};
    double max_abs{0.0};
    std::vector<double> window_rms;   // one entry per requested window
};

inline SeriesMetrics compare_series(const TimeSeries& a, const TimeSeries& b,
                                    const std::vector<std::pair<double, double>>& windows = {}) {
    if (a.times.size() != b.times.size() ||
        (a.times - b.times).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("compare_series: time grids differ");
    const Eigen::VectorXd d = a.values - b.values;
    SeriesMetrics m;
    m.rms = std::sqrt(d.squaredNorm() / d.size());
    m.max_abs = d.cwiseAbs().maxCoeff();
    for (const auto& [t0, t1] : windows) {
        double acc = 0.0;
        int cnt = 0;
        for (int i = 0; i < a.times.size(); ++i)
            if (a.times(i) >= t0 && a.times(i) <= t1) {
                acc += d(i) * d(i);
                ++cnt;
            }
        m.window_rms.push_back(cnt > 0 ? std::sqrt(acc / cnt) : 0.0);
    }
    return m;
}

inline Eigen::VectorXd linspace(double a, double b, int n) {
    return Eigen::VectorXd::LinSpaced(n, a, b);
}

}  // namespace dicke3
