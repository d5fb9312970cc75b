#include "imdd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "imdd/formats.hpp"

namespace imdd::io {

using nlohmann::json;

json to_json(const Constellation& c) {
    json kinds = json::array();
    for (auto k : c.basis().kinds()) kinds.push_back(to_string(k));
    json points = json::array();
    for (const auto& p : c.points()) {
        json row = json::array();
        for (double v : p.coords()) row.push_back(v);
        points.push_back(std::move(row));
    }
    return {{"name", c.name()}, {"basis", {{"T", c.basis().symbol_period()}, {"kinds", kinds}}}, {"points", points}};
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw Error(Errc::parse_error, "field '" + field + "': " + why);
}

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

}  // namespace

Constellation constellation_from_json(const json& j) {
    const json& name = member(j, "name", "");
    if (!name.is_string()) fail("name", "expected a string");
    const json& basis = member(j, "basis", "");
    const json& period = member(basis, "T", "basis");
    if (!period.is_number()) fail("basis.T", "expected a number");
    const json& kinds = member(basis, "kinds", "basis");
    if (!kinds.is_array()) fail("basis.kinds", "expected an array of strings");
    std::vector<BasisKind> parsed_kinds;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (!kinds[i].is_string()) fail("basis.kinds[" + std::to_string(i) + "]", "expected a string");
        try {
            parsed_kinds.push_back(basis_kind_from_string(kinds[i].get<std::string>()));
        } catch (const Error& e) {
            fail("basis.kinds[" + std::to_string(i) + "]", e.what());
        }
    }
    const json& points = member(j, "points", "");
    if (!points.is_array()) fail("points", "expected an array of coordinate arrays");
    std::vector<SignalPoint> pts;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string field = "points[" + std::to_string(i) + "]";
        if (!points[i].is_array() || points[i].empty() || points[i].size() > kMaxDims)
            fail(field, "expected an array of 1 to 3 numbers");
        std::vector<double> coords;
        for (const auto& v : points[i]) {
            if (!v.is_number()) fail(field, "expected numbers");
            coords.push_back(v.get<double>());
        }
        pts.emplace_back(std::span<const double>(coords));
    }
    try {
        return {name.get<std::string>(), BasisConfig(period.get<double>(), std::move(parsed_kinds)), std::move(pts)};
    } catch (const Error& e) {
        fail("points", e.what());
    }
}

void write_constellation(const std::filesystem::path& path, const Constellation& c) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::usage_error, "cannot write '" + path.string() + "'");
    os << to_json(c).dump(2) << '\n';
}

Constellation read_constellation(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(Errc::usage_error, "cannot read '" + path.string() + "'");
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, path.string() + ": " + e.what());
    }
    return constellation_from_json(j);
}

Constellation resolve_constellation(const std::string& name_or_path) {
    if (formats::is_builtin(name_or_path)) return formats::builtin(name_or_path);
    if (!std::filesystem::exists(name_or_path))
        throw Error(Errc::usage_error, "'" + name_or_path + "' is neither a built-in format nor an existing file");
    return read_constellation(name_or_path);
}

json to_json(const SolveReport& r) {
    return {{"constellation", to_json(r.best)},
            {"objective_value", r.objective_value},
            {"restarts_hitting_best", r.restarts_hitting_best},
            {"constraint_violation", r.constraint_violation}};
}

json to_json(const SimReport& r) {
    return {{"ser", r.ser},         {"errors", r.errors}, {"trials", r.trials},
            {"std_error", r.std_error}, {"seed", r.seed}};
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace imdd::io
