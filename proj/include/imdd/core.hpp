#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "imdd/error.hpp"

namespace imdd {

inline constexpr std::size_t kMaxDims = 3;

/// Basis functions on [0, T). DC is sqrt(1/T); the cosine/sine kinds are
/// sqrt(2/T) cos/sin(2 pi f t) with f = 1/(2T) (HALF) or f = 1/T (FULL).
enum class BasisKind { DC, COS_HALF, COS_FULL, SIN_FULL };

const char* to_string(BasisKind kind) noexcept;
BasisKind basis_kind_from_string(const std::string& name);

/// Subcarrier frequency in units of 1/T (0 for DC).
double subcarrier_cycles(BasisKind kind) noexcept;

/// Value of the basis function at time t (zero outside the left-closed
/// symbol interval [0, T)).
double basis_value(BasisKind kind, double t, double symbol_period) noexcept;

class BasisConfig {
public:
    /// Throws Errc::unsupported_basis unless kinds is one of the three
    /// supported spaces: [DC], [DC, COS_HALF], [DC, COS_FULL, SIN_FULL].
    BasisConfig(double symbol_period, std::vector<BasisKind> kinds);

    static BasisConfig pam(double symbol_period = 1.0);
    static BasisConfig two_dim(double symbol_period = 1.0);
    static BasisConfig raised_qam(double symbol_period = 1.0);

    double symbol_period() const noexcept { return symbol_period_; }
    const std::vector<BasisKind>& kinds() const noexcept { return kinds_; }
    std::size_t dims() const noexcept { return kinds_.size(); }

    BasisConfig with_period(double symbol_period) const { return {symbol_period, kinds_}; }

    friend bool operator==(const BasisConfig&, const BasisConfig&) = default;

private:
    double symbol_period_;
    std::vector<BasisKind> kinds_;
};

/// Coordinates of one signal with respect to the owning basis.
class SignalPoint {
public:
    SignalPoint() = default;
    SignalPoint(std::initializer_list<double> coords);
    explicit SignalPoint(std::span<const double> coords);

    std::size_t size() const noexcept { return size_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    double& operator[](std::size_t i) noexcept { return coords_[i]; }
    std::span<const double> coords() const noexcept { return {coords_.data(), size_}; }

    /// Euclidean norm of (s_2, ..., s_N).
    double ac_norm() const noexcept;
    double norm_squared() const noexcept;

    friend bool operator==(const SignalPoint& a, const SignalPoint& b) noexcept {
        return a.size_ == b.size_ && a.coords_ == b.coords_;
    }

private:
    std::array<double, kMaxDims> coords_{};
    std::size_t size_ = 0;
};

double distance(const SignalPoint& a, const SignalPoint& b) noexcept;

class Constellation {
public:
    /// Validates dimensions, pairwise distinctness and admissibility
    /// (tolerance scaled by the largest coordinate magnitude).
    Constellation(std::string name, BasisConfig basis, std::vector<SignalPoint> points,
                  double admissibility_tol = 1e-9);

    const std::string& name() const noexcept { return name_; }
    const BasisConfig& basis() const noexcept { return basis_; }
    const std::vector<SignalPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dims() const noexcept { return basis_.dims(); }
    const SignalPoint& operator[](std::size_t i) const noexcept { return points_[i]; }

    Constellation renamed(std::string name) const;
    Constellation with_basis(BasisConfig basis) const;
    Constellation scaled(double factor) const;

private:
    std::string name_;
    BasisConfig basis_;
    std::vector<SignalPoint> points_;
};

/// s_1 - sqrt(2) * ||(s_2, ..., s_N)||; nonnegative exactly on the cone.
double cone_margin(const SignalPoint& p);

/// True iff the waveform of p is nonnegative over the symbol, up to tol:
/// s_1 >= sqrt(2) ||(s_2..s_N)|| - tol. Throws for more than three dims.
bool is_admissible(const SignalPoint& p, double tol = 1e-12);

double min_distance(const Constellation& c);
Constellation normalize_unit_dmin(const Constellation& c);

/// Mean first coordinate. Physical average optical power is this times c/sqrt(T).
double average_optical_coeff(const Constellation& c);
/// max_i (s_i1 + sqrt(2) ||(s_i2..s_iN)||). Physical peak is this times c/sqrt(T).
double peak_optical_coeff(const Constellation& c);
double mean_squared_norm(const Constellation& c);

enum class SampleGrid {
    left_edge,  // t = (k + j/n) T
    midpoint,   // t = (k + (j + 1/2)/n) T
};

std::vector<double> synthesize_waveform(const Constellation& c, std::span<const std::size_t> symbols,
                                        std::size_t samples_per_symbol,
                                        SampleGrid grid = SampleGrid::left_edge);

/// Sorts 2-D points lexicographically (s_1 major), first applying the
/// s_2 -> -s_2 reflection when that yields a lexicographically smaller list.
/// Coordinates are compared on a 1e-7 grid so numerically equal values tie.
Constellation canonicalize(const Constellation& c);

/// Largest absolute coordinate difference between two equally sized
/// constellations, point by point in stored order.
double max_coordinate_deviation(const Constellation& a, const Constellation& b);

}  // namespace imdd
