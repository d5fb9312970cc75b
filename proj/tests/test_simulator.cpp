#include <doctest.h>

#include <array>
#include <cmath>

#include "imdd/baselines.hpp"
#include "imdd/formats.hpp"
#include "imdd/metrics.hpp"
#include "imdd/simulator.hpp"

using namespace imdd;

TEST_CASE("channel validation") {
    ChannelConfig ch;
    ch.noise_sigma = -1.0;
    CHECK_THROWS_AS(run_vector(formats::t_4(), ch), Error);
    ch = ChannelConfig{};
    ch.n_symbols = 0;
    CHECK_THROWS_AS(run_vector(formats::t_4(), ch), Error);
}

TEST_CASE("detect picks the nearest point and the lowest index on ties") {
    const auto c = formats::t_4();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::array<double, 2> y{c[i][0] + 0.01, c[i][1] - 0.01};
        CHECK(detect(y, c) == i);
    }
    const auto ook = make_baseline(BaselineKind::ook());
    const std::array<double, 1> mid{0.5};
    CHECK(detect(mid, ook) == 0);
    const std::array<double, 1> far{100.0};
    CHECK(detect(far, ook) == 1);
    const std::array<double, 2> wrong{0.0, 0.0};
    CHECK_THROWS_AS(detect(wrong, ook), Error);
}

TEST_CASE("noiseless limit has no errors") {
    for (const auto& n : formats::builtin_names()) {
        const ChannelConfig ch{1e-6, 200'000, 5, 1, false};
        CHECK(run_vector(formats::builtin(n), ch).errors == 0);
    }
}

TEST_CASE("OOK SER matches Q(d / 2 sigma)") {
    const ChannelConfig ch{0.25, 2'000'000, 11, 0, false};
    const auto r = run_vector(make_baseline(BaselineKind::ook()), ch);
    const double want = q_function(2.0);
    CHECK(std::abs(r.ser - want) <= 3.0 * r.std_error);
    CHECK(r.trials == 2'000'000);
}

TEST_CASE("4-PAM SER matches 1.5 Q") {
    const ChannelConfig ch{0.2, 2'000'000, 3, 0, false};
    const auto r = run_vector(make_baseline(BaselineKind::pam(4)), ch);
    CHECK(std::abs(r.ser - 1.5 * q_function(2.5)) <= 3.0 * r.std_error);
}

TEST_CASE("Gray BER on 4-PAM is SER / 2 up to two-step errors") {
    const ChannelConfig ch{0.2, 1'000'000, 4, 0, true};
    const auto r = run_vector(make_baseline(BaselineKind::pam(4)), ch);
    CHECK(r.bit_errors >= r.errors);
    CHECK(r.ber == doctest::Approx(r.ser / 2.0).epsilon(0.01));
}

TEST_CASE("results do not depend on the thread count") {
    const auto c = formats::t_avg_8();
    ChannelConfig ch{0.3, 300'000, 77, 1, true};
    const auto one = run_vector(c, ch);
    ch.threads = 3;
    const auto three = run_vector(c, ch);
    ch.threads = 8;
    const auto eight = run_vector(c, ch);
    CHECK(one == three);
    CHECK(one == eight);
    ch.threads = 1;
    const auto w1 = run_waveform(c, ch, 8);
    ch.threads = 5;
    CHECK(w1 == run_waveform(c, ch, 8));
}

TEST_CASE("seeds change the sample path") {
    const auto c = formats::t_4();
    const auto a = run_vector(c, {0.3, 200'000, 1, 1, false});
    const auto b = run_vector(c, {0.3, 200'000, 2, 1, false});
    CHECK(a.errors != b.errors);
}

TEST_CASE("waveform and vector channels agree statistically") {
    for (const auto& n : {"t-4", "t-peak-3", "qpsk-scm", "pam4"}) {
        CAPTURE(n);
        const auto c = formats::builtin(n);
        const ChannelConfig ch{0.3, 400'000, 21, 0, false};
        const auto v = run_vector(c, ch);
        for (std::size_t sps : {8u, 16u, 33u}) {
            const auto w = run_waveform(c, ch, sps);
            const double se = std::hypot(v.std_error, w.std_error);
            CHECK(std::abs(v.ser - w.ser) <= 4.0 * se);
        }
        CHECK(std::abs(v.ser - predicted_ser(c, 0.3)) <= 0.15 * predicted_ser(c, 0.3));
    }
}

TEST_CASE("waveform simulation needs a fine enough grid") {
    const ChannelConfig ch{0.3, 1000, 0, 1, false};
    CHECK_THROWS_AS(run_waveform(formats::t_4(), ch, 4), Error);
}

TEST_CASE("energy per bit") {
    CHECK(energy_per_bit(make_baseline(BaselineKind::ook())) == 0.5);
    CHECK(energy_per_bit(make_baseline(BaselineKind::pam(4))) == 1.75);
}

TEST_CASE("union bound stays above the simulated SER") {
    for (const auto& n : {"t-4", "t-avg-8", "t-peak-8"}) {
        const auto c = formats::builtin(n);
        for (double sigma : {0.1, 0.15, 0.2, 0.3}) {
            const auto r = run_vector(c, {sigma, 500'000, 8, 0, false});
            CHECK(predicted_ser(c, sigma) >= r.ser - 3.0 * r.std_error);
        }
    }
}

TEST_CASE("vector and waveform agree across the noise grid") {
    const Constellation designs[] = {formats::t_avg_3(), formats::t_peak_3(), formats::t_4(), formats::t_avg_8(),
                                      formats::t_peak_8(), make_baseline(BaselineKind::ook())};
    for (const auto& c : designs) {
        for (double sigma : {0.1, 0.2, 0.3}) {
            CAPTURE(c.name());
            CAPTURE(sigma);
            const ChannelConfig ch{sigma, 300'000, 31, 0, false};
            const auto v = run_vector(c, ch);
            const auto w = run_waveform(c, ch, 16);
            CHECK(std::abs(v.ser - w.ser) <= 3.0 * std::hypot(v.std_error, w.std_error) + 1e-12);
        }
    }
}

TEST_CASE("SER grows with sigma at a fixed seed") {
    double prev = 0.0;
    for (double sigma = 0.05; sigma <= 0.6; sigma += 0.05) {
        const auto r = run_vector(formats::t_peak_8(), {sigma, 100'000, 9, 0, false});
        CHECK(r.ser >= prev);
        prev = r.ser;
    }
}
