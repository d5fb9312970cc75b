#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "imdd/baselines.hpp"
#include "imdd/formats.hpp"
#include "imdd/spectral.hpp"

using namespace imdd;

namespace {

// Composite Gauss-Legendre evaluation of the Fourier integral of a basis
// function, used as an oracle for the closed-form transforms.
std::complex<double> transform_oracle(BasisKind kind, double f, double T) {
    const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                             0.9061798459386640};
    const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
    const int panels = 4000;
    const double h = T / panels;
    std::complex<double> acc = 0.0;
    for (int p = 0; p < panels; ++p)
        for (int q = 0; q < 5; ++q) {
            const double t = (p + 0.5 + 0.5 * nodes[q]) * h;
            acc += 0.5 * h * weights[q] * basis_value(kind, t, T) *
                   std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * f * t));
        }
    return acc;
}

// OOK fractional bandwidth W*T, computed with 40-digit arithmetic from the
// closed form of the OOK spectrum (sinc^2 continuum plus a DC line).
constexpr double kOokW90 = 0.534848580122325770;
constexpr double kOokW99 = 5.21378435124651317;

}  // namespace

TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(1.0)) < 1e-16);
    CHECK(sinc(0.5) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
    CHECK(sinc(1e-7) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sinc(-0.3) == sinc(0.3));
}

TEST_CASE("basis transforms match numerical integration") {
    for (double T : {1.0, 0.01}) {
        for (auto kind : {BasisKind::DC, BasisKind::COS_HALF, BasisKind::COS_FULL, BasisKind::SIN_FULL}) {
            for (double x = -8.0; x <= 8.0; x += 0.173) {
                const auto got = basis_transform(kind, x / T, T);
                const auto want = transform_oracle(kind, x / T, T);
                CAPTURE(x);
                CHECK(std::abs(got - want) / std::sqrt(T) < 1e-9);
            }
            // Integer and half-integer points hit the removable singularities.
            for (double x : {0.0, 0.5, 1.0, 1.5, 2.0, -0.5, -1.0}) {
                CHECK(std::abs(basis_transform(kind, x / T, T) - transform_oracle(kind, x / T, T)) / std::sqrt(T) <
                      1e-9);
            }
        }
    }
    CHECK(std::abs(basis_transform(BasisKind::COS_HALF, 0.0, 1.0)) < 1e-15);
    CHECK(std::abs(basis_transform(BasisKind::DC, 0.0, 4.0)) == doctest::Approx(2.0));
}

TEST_CASE("signal transform is linear in the coordinates") {
    const auto b = BasisConfig::two_dim();
    const SignalPoint p{0.7, -0.2};
    for (double f : {0.0, 0.3, 1.7}) {
        const auto want = 0.7 * basis_transform(BasisKind::DC, f, 1.0) - 0.2 * basis_transform(BasisKind::COS_HALF, f, 1.0);
        CHECK(std::abs(signal_transform(p, b, f) - want) < 1e-15);
    }
}

TEST_CASE("OOK spectrum") {
    const auto sp = build_spectrum(make_baseline(BaselineKind::ook()));
    CHECK(sp.total_power() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sp.line_weight(0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sp.line_weight(1) < 1e-20);
    for (double x : {0.0, 0.25, 0.5, 1.3, 2.0, 7.9}) {
        CHECK(sp.continuous_psd(x) == doctest::Approx(0.25 * sinc(x) * sinc(x)).epsilon(1e-12).scale(1e-15));
    }
}

TEST_CASE("PSD scales with the symbol period") {
    const double T = 1e-3;
    const auto a = build_spectrum(formats::t_4());
    const auto b = build_spectrum(formats::t_4(1.0).with_basis(BasisConfig::two_dim(T)));
    for (double x : {0.0, 0.4, 1.0, 2.5}) CHECK(b.continuous_psd(x / T) == doctest::Approx(a.continuous_psd(x)));
    CHECK(b.total_power() * T == doctest::Approx(a.total_power()).epsilon(1e-12));
    CHECK(b.line_weight(0) * T == doctest::Approx(a.line_weight(0)).epsilon(1e-12));
}

TEST_CASE("total power equals the mean symbol energy over T") {
    std::vector<Constellation> all;
    for (const auto& n : formats::builtin_names()) all.push_back(formats::builtin(n, 1.0));
    all.push_back(formats::t_peak_8(2.5));
    for (const auto& c : all) {
        CAPTURE(c.name());
        const auto sp = build_spectrum(c);
        const double want = mean_squared_norm(c) / c.basis().symbol_period();
        CHECK(std::abs(total_power(sp) - want) / want < 1e-7);
    }
}

TEST_CASE("DC line carries the squared mean level") {
    for (const auto& n : formats::builtin_names()) {
        const auto c = formats::builtin(n);
        const auto sp = build_spectrum(c);
        const double e = average_optical_coeff(c);
        CHECK(sp.line_weight(0) == doctest::Approx(e * e).epsilon(1e-12));
    }
}

TEST_CASE("PSD is even and nonnegative") {
    for (const auto& n : formats::builtin_names()) {
        const auto sp = build_spectrum(formats::builtin(n));
        for (double x = 0.0; x < 6.0; x += 0.37) {
            CHECK(sp.continuous_psd(x) >= 0.0);
            CHECK(sp.continuous_psd(x) == doctest::Approx(sp.continuous_psd(-x)).epsilon(1e-14));
        }
        for (const auto& l : sp.lines()) {
            CHECK(l.weight >= 0.0);
            CHECK(sp.line_weight(static_cast<int>(std::lround(-l.frequency))) == doctest::Approx(l.weight));
        }
    }
}

TEST_CASE("formats symmetric about the axis have only a DC line") {
    for (const auto& n : {"t-avg-3", "t-4", "t-peak-8"}) {
        const auto sp = build_spectrum(formats::builtin(n));
        for (const auto& l : sp.lines()) CHECK(l.frequency == 0.0);
    }
    const auto q = build_spectrum(make_baseline(BaselineKind::qpsk_scm()));
    CHECK(q.line_weight(0) == doctest::Approx(1.0));
    for (int k = 1; k <= 10; ++k) CHECK(q.line_weight(k) < 1e-20);
}

TEST_CASE("a skewed design has lines at every integer frequency") {
    const double a = std::sqrt(2.0 / 3.0), b = 1.0 / std::sqrt(3.0);
    const Constellation skew("skew", BasisConfig::two_dim(), {{0.0, 0.0}, {a, b}});
    const auto sp = build_spectrum(skew);
    // mean s2 = b / 2; the half-cycle cosine transform at integer k is
    // -4ik sqrt(2) / (pi (1 - 4k^2)) in normalized units.
    for (int k = 1; k <= 5; ++k) {
        const double g = std::sqrt(2.0) * 4.0 * k / (std::numbers::pi * (4.0 * k * k - 1.0));
        CHECK(sp.line_weight(k) == doctest::Approx(0.25 * b * b * g * g).epsilon(1e-12));
    }
    CHECK(total_power(sp) == doctest::Approx(mean_squared_norm(skew)).epsilon(1e-7));
}

TEST_CASE("a single point has only a DC line") {
    const Constellation one("one", BasisConfig::two_dim(), {{2.0, 0.0}});
    const auto sp = build_spectrum(one);
    CHECK(sp.line_weight(0) == doctest::Approx(4.0));
    CHECK(sp.continuous_psd(0.3) == 0.0);
    CHECK(fractional_bandwidth(sp, {0.9, 1e-9}) == 0.0);
}

TEST_CASE("OOK fractional bandwidth matches the high-precision oracle") {
    const auto sp = build_spectrum(make_baseline(BaselineKind::ook()));
    CHECK(fractional_bandwidth(sp, {0.9, 1e-12}) == doctest::Approx(kOokW90).epsilon(1e-8));
    CHECK(fractional_bandwidth(sp, {0.99, 1e-12}) == doctest::Approx(kOokW99).epsilon(1e-8));
    CHECK(spectral_efficiency(sp, 0.9) == doctest::Approx(1.0 / kOokW90).epsilon(1e-8));
}

TEST_CASE("fractional bandwidth grows with K and captures K of the power") {
    for (const auto& n : formats::builtin_names()) {
        CAPTURE(n);
        const auto sp = build_spectrum(formats::builtin(n));
        double prev = 0.0;
        for (double K : {0.6, 0.8, 0.9, 0.95, 0.99}) {
            const double W = fractional_bandwidth(sp, {K, 1e-9});
            CHECK(W >= prev);
            prev = W;
            CHECK(sp.in_band_power(W + 1e-8) >= K * sp.total_power() * (1.0 - 1e-9));
            if (W > 1e-8) CHECK(sp.in_band_power(W - 1e-8) <= K * sp.total_power() * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("spectral efficiency does not depend on T") {
    for (const auto& n : {"ook", "t-4", "qpsk-scm"}) {
        const double a = spectral_efficiency(formats::builtin(n, 1.0), 0.9);
        const double b = spectral_efficiency(formats::builtin(n, 1e-6), 0.9);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("K outside (0, 1) is rejected") {
    const auto sp = build_spectrum(formats::t_4());
    for (double K : {0.0, 1.0, -0.1, 1.5}) {
        try {
            fractional_bandwidth(sp, {K, 1e-9});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::invalid_parameter);
        }
    }
}
