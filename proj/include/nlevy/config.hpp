#ifndef NLEVY_CONFIG_HPP
#define NLEVY_CONFIG_HPP

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "grid.hpp"
#include "measure.hpp"
#include "solver.hpp"
#include "verify.hpp"

namespace nlevy {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace cfg_detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + ": bad value for '" + key + "'");
    }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

}  // namespace cfg_detail

inline LevyMeasure parse_measure(const json& j, const std::string& where = "measure") {
    using cfg_detail::get;
    using cfg_detail::get_or;
    const std::string kind = get<std::string>(j, "kind", where);
    if (kind == "radial_density") {
        cfg_detail::require_keys(j, {"kind", "sigma", "dim", "c"}, where);
        return LevyMeasure::radial_density(get<int>(j, "dim", where), get<double>(j, "sigma", where),
                                           get_or(j, "c", 1.0));
    }
    if (kind == "fractional") {
        cfg_detail::require_keys(j, {"kind", "sigma", "dim"}, where);
        return LevyMeasure::fractional_laplacian_measure(get<int>(j, "dim", where),
                                                         get<double>(j, "sigma", where));
    }
    if (kind == "axis_stable") {
        cfg_detail::require_keys(j, {"kind", "sigma", "dim", "c"}, where);
        return LevyMeasure::axis_stable(get<int>(j, "dim", where), get<double>(j, "sigma", where),
                                        get_or(j, "c", 1.0));
    }
    if (kind == "dyadic_comb") {
        cfg_detail::require_keys(j, {"kind", "sigma", "dim", "k_min", "k_max"}, where);
        return LevyMeasure::dyadic_comb(get<int>(j, "dim", where), get<double>(j, "sigma", where),
                                        get<int>(j, "k_min", where), get<int>(j, "k_max", where));
    }
    if (kind == "atoms" || kind == "polar") {
        cfg_detail::require_keys(j, {"kind", "sigma", "dim", "atoms"}, where);
        const int dim = get<int>(j, "dim", where);
        const auto rows = get<std::vector<std::vector<double>>>(j, "atoms", where);
        if (kind == "atoms") {
            std::vector<Atom> atoms;
            for (const auto& row : rows) {
                if (int(row.size()) != dim + 1)
                    throw ConfigError(where + ": atom rows are [coords..., weight]");
                Atom a;
                for (int i = 0; i < dim; ++i) a.y[i] = row[i];
                a.w = row[dim];
                atoms.push_back(a);
            }
            return LevyMeasure::atoms(dim, get<double>(j, "sigma", where), std::move(atoms));
        }
        std::vector<SphericalAtom> sph;
        for (const auto& row : rows) {
            if (int(row.size()) != dim + 1)
                throw ConfigError(where + ": polar rows are [direction..., weight]");
            SphericalAtom a;
            for (int i = 0; i < dim; ++i) a.dir[i] = row[i];
            a.w = row[dim];
            sph.push_back(a);
        }
        return LevyMeasure::polar(dim, get<double>(j, "sigma", where), std::move(sph));
    }
    if (kind == "sum") {
        cfg_detail::require_keys(j, {"kind", "parts"}, where);
        if (!j.at("parts").is_array()) throw ConfigError(where + ": parts must be an array");
        std::vector<LevyMeasure> parts;
        for (const auto& pj : j.at("parts")) parts.push_back(parse_measure(pj, where + ".parts"));
        return LevyMeasure::sum(std::move(parts));
    }
    if (kind == "scaled") {
        cfg_detail::require_keys(j, {"kind", "factor", "inner"}, where);
        return LevyMeasure::scaled(get<double>(j, "factor", where),
                                   parse_measure(j.at("inner"), where + ".inner"));
    }
    throw ConfigError(where + ": unknown measure kind '" + kind + "'");
}

inline TimeDependentMeasure parse_schedule(const json& j, const std::string& where = "schedule") {
    if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a nonempty array");
    TimeDependentMeasure tdm;
    for (const auto& pj : j) {
        cfg_detail::require_keys(pj, {"t_a", "t_b", "measure"}, where);
        tdm.schedule.push_back({cfg_detail::get<double>(pj, "t_a", where),
                                cfg_detail::get<double>(pj, "t_b", where),
                                parse_measure(pj.at("measure"), where + ".measure")});
    }
    tdm.validate();
    return tdm;
}

inline std::vector<double> parse_log_grid(const json& j, const std::string& where) {
    cfg_detail::require_keys(j, {"log2_min", "log2_max", "points"}, where);
    const int points = cfg_detail::get<int>(j, "points", where);
    const double lo = cfg_detail::get<double>(j, "log2_min", where);
    if (points == 1) return {std::exp2(lo)};  // degenerate but valid
    return log_spaced(std::exp2(lo), std::exp2(cfg_detail::get<double>(j, "log2_max", where)),
                      points);
}

inline json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return j;
}

/// Forcing block of a solve config.
inline PiecewiseForcing parse_forcing(const json& j, int dim, int n, double horizon,
                                      uint64_t seed_override) {
    const std::string where = "forcing";
    const std::string type = cfg_detail::get<std::string>(j, "type", where);
    if (type == "single_mode") {
        cfg_detail::require_keys(j, {"type", "mode", "amplitude"}, where);
        const int mode = cfg_detail::get<int>(j, "mode", where);
        const double amp = cfg_detail::get_or(j, "amplitude", 1.0);
        GridField f(dim, n);
        for (size_t i = 0; i < f.values.size(); ++i)
            f.values[i] = amp * std::cos(mode * f.coord(i, 0));
        return PiecewiseForcing::constant(std::move(f), horizon);
    }
    if (type == "random") {
        cfg_detail::require_keys(j, {"type", "max_mode", "pieces", "seed"}, where);
        const int max_mode = cfg_detail::get<int>(j, "max_mode", where);
        const int pieces = cfg_detail::get_or(j, "pieces", 1);
        uint64_t seed = cfg_detail::get_or<uint64_t>(j, "seed", 1);
        if (seed_override != 0) seed = seed_override;
        std::mt19937_64 rng(seed);
        PiecewiseForcing f;
        f.mesh = linear_spaced(0.0, horizon, pieces + 1);
        for (int i = 0; i < pieces; ++i)
            f.pieces.push_back(random_band_limited(dim, n, max_mode, rng));
        return f;
    }
    if (type == "zero") {
        cfg_detail::require_keys(j, {"type"}, where);
        return PiecewiseForcing::constant(GridField(dim, n), horizon);
    }
    throw ConfigError("forcing: unknown type '" + type + "'");
}

}  // namespace nlevy

#endif
