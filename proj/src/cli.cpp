#include "imdd/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "imdd/formats.hpp"
#include "imdd/io.hpp"
#include "imdd/metrics.hpp"
#include "imdd/optimizer.hpp"
#include "imdd/simulator.hpp"
#include "imdd/spectral.hpp"

#ifndef IMDD_VERSION
#define IMDD_VERSION "dev"
#endif

namespace imdd {

namespace {

using nlohmann::json;

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(Errc::usage_error, std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw Error(Errc::usage_error, std::string(flag) + " needs at least one value");
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

/// Writes text to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(Errc::usage_error, "cannot write '" + path + "'");
    os << text;
}

struct Globals {
    std::string out;
    std::uint64_t seed = 0;
    std::string format = "json";
};

void header(std::ostream& err, const std::string& command, const Globals& g, const std::string& params) {
    err << "# imdd " << IMDD_VERSION << " command=" << command << " seed=" << g.seed << ' ' << params << '\n';
}

std::string k_key(double K) { return io::format_double(K); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"IM/DD signal-space constellation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", IMDD_VERSION);

    Globals g;
    auto add_globals = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("--out", g.out, "Output file (stdout when omitted)");
        if (with_seed) sub->add_option("--seed", g.seed, "Random seed");
        sub->add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    // optimize
    auto* opt = app.add_subcommand("optimize", "Design an M-point constellation in the 2-D cone");
    int m = 0;
    std::string objective = "avg";
    SolverSettings settings;
    opt->add_option("--m", m, "Constellation size")->required();
    opt->add_option("--objective", objective, "avg | peak")->check(CLI::IsMember({"avg", "peak"}));
    opt->add_option("--restarts", settings.restarts, "Multi-start count");
    opt->add_option("--max-iterations", settings.max_iterations, "L-BFGS iterations per penalty stage");
    opt->add_option("--threads", settings.threads, "Worker threads (0 = all cores)");
    add_globals(opt, true);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Power metrics, gains over OOK and spectral efficiency");
    std::string source;
    std::string ks = "0.9,0.99";
    analyze->add_option("constellation", source, "Built-in name or JSON file")->required();
    analyze->add_option("--k", ks, "Comma-separated in-band power fractions");
    add_globals(analyze, false);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "Sample the power spectral density");
    double fmax = 8.0;
    int points = 801;
    std::string lines_out;
    spectrum->add_option("constellation", source, "Built-in name or JSON file")->required();
    spectrum->add_option("--fmax", fmax, "Largest f*T to sample")->check(CLI::PositiveNumber);
    spectrum->add_option("--points", points, "Number of frequency samples")->check(CLI::Range(2, 10'000'000));
    spectrum->add_option("--lines-out", lines_out, "Spectral line table (default: <out stem>_lines.csv)");
    add_globals(spectrum, false);

    // bandwidth
    auto* bandwidth = app.add_subcommand("bandwidth", "Fractional power bandwidth");
    bandwidth->add_option("constellation", source, "Built-in name or JSON file")->required();
    bandwidth->add_option("--k", ks, "Comma-separated in-band power fractions");
    add_globals(bandwidth, false);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo symbol error rate over AWGN");
    std::string sigmas = "0.1,0.2,0.3";
    std::uint64_t symbols = 1'000'000;
    bool waveform = false;
    std::size_t sps = 16;
    unsigned threads = 0;
    bool gray_ber = false;
    simulate->add_option("constellation", source, "Built-in name or JSON file")->required();
    simulate->add_option("--sigma", sigmas, "Comma-separated per-dimension noise std");
    simulate->add_option("--symbols", symbols, "Symbols per sigma")->check(CLI::PositiveNumber);
    simulate->add_flag("--waveform", waveform, "Simulate the sampled waveform and correlator receiver");
    simulate->add_option("--sps", sps, "Samples per symbol for --waveform");
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
    simulate->add_flag("--gray-ber", gray_ber, "Also report bit errors under a Gray labeling of indices");
    add_globals(simulate, true);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Spectral efficiency and gains for several formats");
    std::string names = "ook,pam4,qpsk-scm,t-avg-3,t-peak-3,t-4,t-avg-8,t-peak-8";
    std::string sweep_k = "0.9";
    sweep->add_option("--formats", names, "Comma-separated built-in names or files");
    sweep->add_option("--k", sweep_k, "Comma-separated in-band power fractions");
    add_globals(sweep, false);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*opt) {
            settings.seed = g.seed;
            const DesignProblem problem{m, objective_from_string(objective), 2};
            std::ostringstream params;
            params << "m=" << m << " objective=" << objective << " restarts=" << settings.restarts
                   << " max_iterations=" << settings.max_iterations;
            header(err, "optimize", g, params.str());
            const SolveReport r = solve(problem, settings);
            if (g.out.empty()) {
                out << io::to_json(r).dump(2) << '\n';
            } else {
                io::write_constellation(g.out, r.best);
                err << "# objective=" << io::format_double(r.objective_value)
                    << " restarts_hitting_best=" << r.restarts_hitting_best
                    << " constraint_violation=" << r.constraint_violation << '\n';
            }
        } else if (*analyze) {
            const auto Ks = parse_list(ks, "--k");
            header(err, "analyze", g, "constellation=" + source + " k=" + ks);
            const Constellation c = io::resolve_constellation(source);
            const GainReport r = gain_report(c, Ks);
            if (g.format == "csv") {
                std::ostringstream os;
                os << "name,K,eta,avg_gain_db,peak_gain_db\n";
                for (const auto& [K, eta] : r.eta_at_K)
                    os << c.name() << ',' << io::format_double(K) << ',' << io::format_double(eta) << ','
                       << io::format_double(r.avg_gain_db) << ',' << io::format_double(r.peak_gain_db) << '\n';
                emit(g.out, os.str(), out);
            } else {
                json eta = json::object();
                for (const auto& [K, v] : r.eta_at_K) eta[k_key(K)] = v;
                const json j{{"name", c.name()},
                             {"M", c.size()},
                             {"average_optical_coeff", average_optical_coeff(c)},
                             {"peak_optical_coeff", peak_optical_coeff(c)},
                             {"avg_gain_db", r.avg_gain_db},
                             {"peak_gain_db", r.peak_gain_db},
                             {"eta_at_K", eta}};
                emit(g.out, j.dump(2) + "\n", out);
            }
        } else if (*spectrum) {
            std::ostringstream params;
            params << "constellation=" << source << " fmax=" << fmax << " points=" << points;
            header(err, "spectrum", g, params.str());
            const Constellation c = io::resolve_constellation(source);
            const SpectrumProfile sp = build_spectrum(c);
            const double T = sp.symbol_period();
            std::ostringstream psd;
            psd << "fT,psd_T\n";
            for (int i = 0; i < points; ++i) {
                const double x = fmax * i / (points - 1);
                psd << io::format_double(x) << ',' << io::format_double(sp.continuous_psd(x / T) * T) << '\n';
            }
            std::ostringstream lines;
            lines << "k,fT,weight_T\n";
            for (const auto& l : sp.lines()) {
                const double kT = l.frequency * T;
                lines << std::lround(kT) << ',' << io::format_double(kT) << ',' << io::format_double(l.weight * T)
                      << '\n';
            }
            emit(g.out, psd.str(), out);
            if (lines_out.empty() && !g.out.empty()) {
                std::filesystem::path p(g.out);
                lines_out = (p.parent_path() / (p.stem().string() + "_lines.csv")).string();
            }
            emit(lines_out, lines.str(), out);
        } else if (*bandwidth) {
            const auto Ks = parse_list(ks, "--k");
            header(err, "bandwidth", g, "constellation=" + source + " k=" + ks);
            const Constellation c = io::resolve_constellation(source);
            const SpectrumProfile sp = build_spectrum(c);
            std::ostringstream os;
            json j = json::array();
            if (g.format == "csv") os << "K,W_T,eta\n";
            for (double K : Ks) {
                const double W = fractional_bandwidth(sp, {K});
                const double eta = spectral_efficiency(sp, K);
                if (g.format == "csv")
                    os << io::format_double(K) << ',' << io::format_double(W * sp.symbol_period()) << ','
                       << io::format_double(eta) << '\n';
                else
                    j.push_back({{"K", K}, {"W_T", W * sp.symbol_period()}, {"eta", eta}});
            }
            emit(g.out, g.format == "csv" ? os.str() : json{{"name", c.name()}, {"bandwidth", j}}.dump(2) + "\n",
                 out);
        } else if (*simulate) {
            const auto sig = parse_list(sigmas, "--sigma");
            std::ostringstream params;
            params << "constellation=" << source << " sigma=" << sigmas << " symbols=" << symbols
                   << " waveform=" << (waveform ? 1 : 0) << " sps=" << sps;
            header(err, "simulate", g, params.str());
            const Constellation c = io::resolve_constellation(source);
            std::ostringstream os;
            os << "sigma,ser,std_error" << (gray_ber ? ",ber" : "") << '\n';
            for (double s : sig) {
                ChannelConfig ch{s, symbols, g.seed, threads, gray_ber};
                const SimReport r = waveform ? run_waveform(c, ch, sps) : run_vector(c, ch);
                os << io::format_double(s) << ',' << io::format_double(r.ser) << ','
                   << io::format_double(r.std_error);
                if (gray_ber) os << ',' << io::format_double(r.ber);
                os << '\n';
            }
            emit(g.out, os.str(), out);
        } else if (*sweep) {
            const auto Ks = parse_list(sweep_k, "--k");
            header(err, "sweep", g, "formats=" + names + " k=" + sweep_k);
            std::ostringstream os;
            os << "name,eta,avg_gain_db,peak_gain_db,K\n";
            for (const auto& name : split_names(names)) {
                const Constellation c = io::resolve_constellation(name);
                const GainReport r = gain_report(c, Ks);
                for (const auto& [K, eta] : r.eta_at_K)
                    os << c.name() << ',' << io::format_double(eta) << ',' << io::format_double(r.avg_gain_db) << ','
                       << io::format_double(r.peak_gain_db) << ',' << io::format_double(K) << '\n';
            }
            emit(g.out, os.str(), out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::usage_error ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace imdd
