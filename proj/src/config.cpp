#include "edsp/config.hpp"

#include <fstream>
#include <sstream>

#include "edsp/errors.hpp"

namespace edsp {

using nlohmann::json;

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) {
        Integer z;
        if (s.empty() || z.set_str(s, 10) != 0)
            throw ConfigError("not a rational number: '" + text + "'");
        return z;
    };
    if (slash == std::string::npos)
        return Rational(parse_int(text));
    Integer num = parse_int(text.substr(0, slash));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw ConfigError("zero denominator in '" + text + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::set<Index> parse_index_list(const std::string& text) {
    std::set<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            continue;
        item = item.substr(first, last - first + 1);
        if (item.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("not a positive index: '" + item + "'");
        const Index n = std::stoull(item);
        if (n == 0)
            throw ConfigError("power-set indices must be positive");
        out.insert(n);
    }
    if (out.empty())
        throw ConfigError("empty index list '" + text + "'");
    return out;
}

namespace {

std::string number_string(const json& v, const std::string& what) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return std::to_string(v.get<std::int64_t>());
    throw ConfigError(what + " must be an integer or a decimal string");
}

}  // namespace

JobConfig parse_config(const json& doc) {
    JobConfig cfg;
    try {
        if (!doc.is_object())
            throw ConfigError("config must be a JSON object");
        const json& curve = doc.at("curve");
        const char* names[] = {"a1", "a2", "a3", "a4", "a6"};
        for (std::size_t i = 0; i < 5; ++i)
            if (curve.contains(names[i]))
                cfg.coefficients[i] = number_string(curve[names[i]], names[i]);
        const json& point = doc.at("point");
        cfg.point_x = number_string(point.at("x"), "point.x");
        cfg.point_y = number_string(point.at("y"), "point.y");
        if (doc.contains("ell"))
            cfg.ell = doc["ell"].get<unsigned>();
        if (doc.contains("power_set")) {
            const json& ps = doc["power_set"];
            if (ps.contains("indices")) {
                std::set<Index> idx;
                for (const auto& v : ps["indices"]) {
                    const auto n = v.get<std::int64_t>();
                    if (n <= 0)
                        throw ConfigError("power-set indices must be positive");
                    idx.insert(static_cast<Index>(n));
                }
                cfg.power_set = std::move(idx);
            }
            cfg.assume_complete = ps.value("assume_complete", false);
            if (ps.contains("scan_bound"))
                cfg.scan_bound = ps["scan_bound"].get<Index>();
        }
        cfg.budget = doc.value("budget", cfg.budget);
        cfg.sieve_limit = doc.value("sieve_limit", cfg.sieve_limit);
        cfg.horizon = doc.value("horizon", cfg.horizon);
        if (doc.contains("max_index"))
            cfg.max_index = doc["max_index"].get<Index>();
        cfg.format = doc.value("format", cfg.format);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }
    if (cfg.ell && *cfg.ell < 2)
        throw ConfigError("ell must be at least 2");
    if (cfg.format != "text" && cfg.format != "jsonl")
        throw ConfigError("format must be 'text' or 'jsonl'");
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    try {
        return parse_config(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
}

Curve make_curve(const JobConfig& cfg) {
    try {
        return Curve(parse_rational(cfg.coefficients[0]), parse_rational(cfg.coefficients[1]),
                     parse_rational(cfg.coefficients[2]), parse_rational(cfg.coefficients[3]),
                     parse_rational(cfg.coefficients[4]));
    } catch (const PreconditionError& e) {
        throw ConfigError(e.what());
    }
}

Point make_point(const JobConfig& cfg) {
    if (cfg.point_x.empty() || cfg.point_y.empty())
        throw ConfigError("config has no point");
    return Point(parse_rational(cfg.point_x), parse_rational(cfg.point_y));
}

PowerSet make_power_set(const JobConfig& cfg, const EdsSequence& seq) {
    if (!cfg.ell)
        throw ConfigError("no exponent ell given");
    if (cfg.power_set) {
        PowerSet ps = PowerSet::from_list(*cfg.ell, *cfg.power_set, cfg.assume_complete);
        validate_power_set(seq, ps);
        return ps;
    }
    if (cfg.scan_bound)
        return seq.scan_powers(*cfg.ell, *cfg.scan_bound);
    throw ConfigError("no power set: give an explicit index list or a scan bound");
}

}  // namespace edsp
