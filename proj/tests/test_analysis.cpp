#include <doctest.h>

#include <cmath>

#include "dicke3/analysis.hpp"

using namespace dicke3;

namespace {

TimeSeries tone(double nu0, double t_max, int n) {
    TimeSeries s;
    s.times = linspace(0.0, t_max, n);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values(i) = std::cos(2.0 * M_PI * nu0 * s.times(i));
    return s;
}

}  // namespace

TEST_CASE("fourier transform") {
    SUBCASE("constant input vanishes after mean subtraction") {
        TimeSeries s;
        s.times = linspace(0.0, 10.0, 256);
        s.values = Eigen::VectorXd::Constant(256, 0.4);
        const Spectrum spec = fourier_transform(s, linspace(0.1, 2.0, 50));
        CHECK(spec.amplitudes.cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("single tone dominates at its own frequency") {
        const double nu0 = 0.8;
        const TimeSeries s = tone(nu0, 50.0, 4096);
        const Eigen::VectorXd grid = linspace(0.1, 3.0, 581);
        const Spectrum spec = fourier_transform(s, grid);
        const auto peaks = find_peaks(spec, 1);
        REQUIRE(peaks.size() == 1);
        CHECK(std::abs(peaks[0].frequency - nu0) < (grid(1) - grid(0)));
        double off = 0.0;
        for (int i = 0; i < grid.size(); ++i)
            if (std::abs(grid(i) - nu0) > 0.2)
                off = std::max(off, std::abs(spec.amplitudes(i)));
        CHECK(peaks[0].magnitude >= 10.0 * off);
    }

    SUBCASE("linear in the input") {
        const TimeSeries a = tone(0.5, 20.0, 512);
        TimeSeries b = tone(1.1, 20.0, 512);
        TimeSeries sum = a;
        sum.values += b.values;
        const Eigen::VectorXd grid = linspace(0.2, 2.0, 181);
        const Spectrum fa = fourier_transform(a, grid, false);
        const Spectrum fb = fourier_transform(b, grid, false);
        const Spectrum fs = fourier_transform(sum, grid, false);
        CHECK((fs.amplitudes - fa.amplitudes - fb.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("Parseval consistency for a band-limited tone") {
        const double t_max = 40.0;
        const TimeSeries s = tone(1.0, t_max, 8192);   // integer cycles in the window
        double time_energy = 0.0;
        const double dt = s.dt();
        for (int i = 0; i < s.values.size(); ++i) {
            const double w = (i == 0 || i == s.values.size() - 1) ? 0.5 : 1.0;
            time_energy += w * s.values(i) * s.values(i) * dt;
        }
        const Eigen::VectorXd grid = linspace(0.25, 1.75, 2401);
        const Spectrum spec = fourier_transform(s, grid, false);
        double freq_energy = 0.0;
        const double dnu = grid(1) - grid(0);
        for (int i = 0; i < grid.size(); ++i)
            freq_energy += 2.0 * std::norm(spec.amplitudes(i)) * dnu;   // +/- nu symmetry
        CHECK(std::abs(freq_energy - time_energy) / time_energy < 0.02);
    }

    SUBCASE("Hann taper keeps the tone and tags the window") {
        const TimeSeries s = tone(0.8, 50.0, 2048);
        const Spectrum spec = fourier_transform(s, linspace(0.2, 1.6, 701), true, true);
        CHECK(spec.window == "hann+demean");
        const auto peaks = find_peaks(spec, 1);
        REQUIRE(peaks.size() == 1);
        CHECK(std::abs(peaks[0].frequency - 0.8) < 0.01);
    }

    SUBCASE("grid contracts are enforced") {
        TimeSeries s;
        s.times = linspace(0.0, 1.0, 8);
        s.values = Eigen::VectorXd::Zero(8);
        CHECK_THROWS_AS(fourier_transform(s, Eigen::VectorXd()), std::invalid_argument);
    }
}

TEST_CASE("peak detection") {
    SUBCASE("peak position is stable under grid refinement") {
        const double nu0 = 0.73;
        const Eigen::VectorXd grid = linspace(0.2, 1.4, 601);
        const double bin = grid(1) - grid(0);
        const Spectrum s1 = fourier_transform(tone(nu0, 60.0, 2048), grid);
        const Spectrum s2 = fourier_transform(tone(nu0, 60.0, 4096), grid);
        const auto p1 = find_peaks(s1, 1);
        const auto p2 = find_peaks(s2, 1);
        REQUIRE(p1.size() == 1);
        REQUIRE(p2.size() == 1);
        CHECK(std::abs(p1[0].frequency - p2[0].frequency) < 0.5 * bin);
    }

    SUBCASE("requesting more peaks than exist returns what exists") {
        const Spectrum spec = fourier_transform(tone(0.8, 50.0, 2048),
                                                linspace(0.7, 0.9, 9));
        CHECK(find_peaks(spec, 10).size() < 10);
    }

    SUBCASE("band helpers") {
        const Spectrum spec = fourier_transform(tone(0.8, 50.0, 2048),
                                                linspace(0.2, 1.6, 701));
        const Peak p = band_peak(spec, 0.8, 0.2);
        CHECK(std::abs(p.frequency - 0.8) < 0.01);
        CHECK(count_band_peaks(spec, 0.8, 0.05, 0.5) == 1);
    }
}

TEST_CASE("series comparison") {
    TimeSeries a = tone(0.5, 10.0, 256);
    const SeriesMetrics zero = compare_series(a, a);
    CHECK(zero.rms == 0.0);
    CHECK(zero.max_abs == 0.0);

    TimeSeries b = a;
    b.values.array() += 0.1;
    const SeriesMetrics m = compare_series(a, b, {{0.0, 5.0}, {5.0, 10.0}});
    CHECK(m.rms == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(m.max_abs == doctest::Approx(0.1).epsilon(1e-12));
    REQUIRE(m.window_rms.size() == 2);
    CHECK(m.window_rms[0] == doctest::Approx(0.1).epsilon(1e-12));

    TimeSeries c = tone(0.5, 10.0, 255);
    CHECK_THROWS_AS(compare_series(a, c), std::invalid_argument);
}
