#include "imdd/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "imdd/kernels.hpp"
#include "imdd/rng.hpp"

namespace imdd {

void ChannelConfig::validate() const {
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw Error(Errc::invalid_parameter, "noise sigma must be nonnegative and finite");
    if (n_symbols < 1) throw Error(Errc::invalid_parameter, "n_symbols must be at least 1");
}

std::size_t detect(std::span<const double> y, const Constellation& c) {
    if (y.size() != c.dims()) throw Error(Errc::unsupported_basis, "received vector dimension mismatch");
    std::size_t best_index = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double d = y[k] - c[i][k];
            acc += d * d;
        }
        if (acc < best) {
            best = acc;
            best_index = i;
        }
    }
    return best_index;
}

double energy_per_bit(const Constellation& c) {
    return mean_squared_norm(c) / std::log2(static_cast<double>(c.size()));
}

namespace {

struct BlockCounts {
    std::uint64_t errors = 0;
    std::uint64_t bit_errors = 0;
};

/// Point coordinates as columns, for the kernels.
struct PointColumns {
    std::vector<double> data[kMaxDims];
    kernels::Columns view;

    explicit PointColumns(const Constellation& c) {
        view.dims = c.dims();
        view.count = c.size();
        for (std::size_t k = 0; k < c.dims(); ++k) {
            for (const auto& p : c.points()) data[k].push_back(p[k]);
            view.coord[k] = data[k].data();
        }
    }
};

std::uint32_t gray(std::uint32_t i) { return i ^ (i >> 1); }

BlockCounts count_errors(std::span<const std::uint32_t> sent, std::span<const std::uint32_t> got, bool bits) {
    BlockCounts out;
    for (std::size_t n = 0; n < sent.size(); ++n) {
        if (sent[n] != got[n]) {
            ++out.errors;
            if (bits) out.bit_errors += static_cast<std::uint64_t>(std::popcount(gray(sent[n]) ^ gray(got[n])));
        }
    }
    return out;
}

/// Runs block(b) for every block on `threads` workers and sums the counts.
template <class BlockFn>
SimReport run_blocks(const Constellation& c, const ChannelConfig& ch, BlockFn&& block) {
    const std::uint64_t n_blocks = (ch.n_symbols + kSimBlockSize - 1) / kSimBlockSize;
    std::vector<BlockCounts> counts(n_blocks);
    unsigned threads = ch.threads ? ch.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) {
            const std::uint64_t first = b * kSimBlockSize;
            const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(kSimBlockSize, ch.n_symbols - first));
            counts[b] = block(b, len);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    SimReport r;
    for (const auto& bc : counts) {
        r.errors += bc.errors;
        r.bit_errors += bc.bit_errors;
    }
    r.trials = ch.n_symbols;
    r.seed = ch.seed;
    r.ser = static_cast<double>(r.errors) / static_cast<double>(r.trials);
    r.std_error = std::sqrt(r.ser * (1.0 - r.ser) / static_cast<double>(r.trials));
    if (ch.gray_bit_errors) {
        const auto bits_per_symbol = std::bit_width(static_cast<std::uint32_t>(c.size() - 1));
        r.ber = static_cast<double>(r.bit_errors) / (static_cast<double>(r.trials) * bits_per_symbol);
    }
    return r;
}

}  // namespace

SimReport run_vector(const Constellation& c, const ChannelConfig& ch) {
    ch.validate();
    const PointColumns points(c);
    const auto& kern = kernels::active();
    const std::size_t dims = c.dims();
    const auto max_symbol = static_cast<std::uint32_t>(c.size() - 1);

    return run_blocks(c, ch, [&](std::uint64_t b, std::size_t len) {
        std::mt19937_64 rng(stream_seed(ch.seed, b));
        std::uniform_int_distribution<std::uint32_t> pick(0, max_symbol);
        std::normal_distribution<double> noise(0.0, 1.0);

        std::vector<std::uint32_t> sent(len), got(len);
        std::vector<double> y[kMaxDims];
        kernels::Columns rx;
        rx.dims = dims;
        rx.count = len;
        for (std::size_t k = 0; k < dims; ++k) {
            y[k].resize(len);
            rx.coord[k] = y[k].data();
        }
        for (std::size_t n = 0; n < len; ++n) {
            sent[n] = pick(rng);
            for (std::size_t k = 0; k < dims; ++k) y[k][n] = c[sent[n]][k] + ch.noise_sigma * noise(rng);
        }
        kern.nearest(points.view, rx, got.data());
        return count_errors(sent, got, ch.gray_bit_errors);
    });
}

SimReport run_waveform(const Constellation& c, const ChannelConfig& ch, std::size_t samples_per_symbol) {
    ch.validate();
    if (samples_per_symbol < 8)
        throw Error(Errc::invalid_parameter, "waveform simulation needs at least 8 samples per symbol");

    const std::size_t sps = samples_per_symbol;
    const std::size_t dims = c.dims();
    const double T = c.basis().symbol_period();
    const double dt = T / static_cast<double>(sps);

    // Sampled basis on the midpoint grid; its Gram matrix must be the identity.
    std::vector<std::vector<double>> rows(dims, std::vector<double>(sps));
    for (std::size_t k = 0; k < dims; ++k)
        for (std::size_t j = 0; j < sps; ++j)
            rows[k][j] = basis_value(c.basis().kinds()[k], (static_cast<double>(j) + 0.5) * dt, T);
    for (std::size_t a = 0; a < dims; ++a)
        for (std::size_t b = 0; b < dims; ++b) {
            double ip = 0.0;
            for (std::size_t j = 0; j < sps; ++j) ip += rows[a][j] * rows[b][j] * dt;
            const double err = std::abs(ip - (a == b ? 1.0 : 0.0));
            if (err > 1e-3)
                throw Error(Errc::calibration_failure, "sampled basis is not orthonormal (error " +
                                                           std::to_string(err) + ") at " + std::to_string(sps) +
                                                           " samples per symbol");
        }

    const PointColumns points(c);
    const auto& kern = kernels::active();
    const auto max_symbol = static_cast<std::uint32_t>(c.size() - 1);
    const double sample_sigma = ch.noise_sigma / std::sqrt(dt);

    return run_blocks(c, ch, [&](std::uint64_t b, std::size_t len) {
        std::mt19937_64 rng(stream_seed(ch.seed, b));
        std::uniform_int_distribution<std::uint32_t> pick(0, max_symbol);
        std::normal_distribution<double> noise(0.0, 1.0);

        std::vector<std::uint32_t> sent(len), got(len);
        for (auto& s : sent) s = pick(rng);
        std::vector<std::size_t> indices(sent.begin(), sent.end());
        std::vector<double> samples = synthesize_waveform(c, indices, sps, SampleGrid::midpoint);
        for (auto& v : samples) v += sample_sigma * noise(rng);

        std::vector<double> r[kMaxDims];
        kernels::Columns rx;
        rx.dims = dims;
        rx.count = len;
        for (std::size_t k = 0; k < dims; ++k) {
            r[k].resize(len);
            kern.correlate(samples.data(), len, sps, rows[k].data(), dt, r[k].data());
            rx.coord[k] = r[k].data();
        }
        kern.nearest(points.view, rx, got.data());
        return count_errors(sent, got, ch.gray_bit_errors);
    });
}

}  // namespace imdd
