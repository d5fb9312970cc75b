#include "imdd/formats.hpp"

#include <cmath>

#include "imdd/baselines.hpp"

namespace imdd::formats {

namespace {

const double kA = std::sqrt(2.0 / 3.0);   // sqrt(2/3)
const double kB = 1.0 / std::sqrt(3.0);   // 1/sqrt(3)
const double kH = std::sqrt(3.0) / 2.0;   // sqrt(3)/2

std::vector<SignalPoint> t4_points() { return {{0.0, 0.0}, {kA, kB}, {kA, -kB}, {2.0 * kA, 0.0}}; }

}  // namespace

Constellation t_avg_3(double T) { return {"t-avg-3", BasisConfig::two_dim(T), {{0.0, 0.0}, {kA, kB}, {kA, -kB}}}; }

Constellation t_peak_3(double T) {
    return {"t-peak-3", BasisConfig::two_dim(T), {{0.0, 0.0}, {kH, 0.5}, {kH, -0.5}}};
}

Constellation t_4(double T) { return {"t-4", BasisConfig::two_dim(T), t4_points()}; }

Constellation t_avg_8(double T) {
    auto pts = t4_points();
    pts.insert(pts.end(), {{2.0 * kA, 2.0 * kB}, {2.0 * kA, -2.0 * kB}, {std::sqrt(6.0), kB}, {std::sqrt(6.0), -kB}});
    return {"t-avg-8", BasisConfig::two_dim(T), std::move(pts)};
}

Constellation t_peak_8(double T) {
    auto pts = t4_points();
    pts.insert(pts.end(), {{kA + kH, 0.5 + kB}, {kA + kH, -0.5 - kB}, {2.0 * kA + kH, 0.5}, {2.0 * kA + kH, -0.5}});
    return {"t-peak-8", BasisConfig::two_dim(T), std::move(pts)};
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"ook",      "pam4", "qpsk-scm", "t-avg-3",
                                                "t-peak-3", "t-4",  "t-avg-8",  "t-peak-8"};
    return names;
}

bool is_builtin(const std::string& name) {
    for (const auto& n : builtin_names())
        if (n == name) return true;
    return false;
}

Constellation builtin(const std::string& name, double T) {
    if (name == "ook") return make_baseline(BaselineKind::ook(), T);
    if (name == "pam4") return make_baseline(BaselineKind::pam(4), T);
    if (name == "qpsk-scm") return make_baseline(BaselineKind::qpsk_scm(), T);
    if (name == "t-avg-3") return t_avg_3(T);
    if (name == "t-peak-3") return t_peak_3(T);
    if (name == "t-4") return t_4(T);
    if (name == "t-avg-8") return t_avg_8(T);
    if (name == "t-peak-8") return t_peak_8(T);
    throw Error(Errc::usage_error, "unknown built-in format '" + name + "'");
}

}  // namespace imdd::formats
