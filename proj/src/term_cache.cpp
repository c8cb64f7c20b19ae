#include "edsp/term_cache.hpp"

#include <fstream>

#include <json.hpp>

#include "edsp/errors.hpp"

namespace edsp {

namespace {

constexpr const char* kFormat = "edsp-term-cache/1";

std::string str(const Rational& q) { return q.get_str(); }

nlohmann::json identity(const EdsSequence& seq) {
    const Curve& e = seq.curve();
    return {
        {"curve", {str(e.a1()), str(e.a2()), str(e.a3()), str(e.a4()), str(e.a6())}},
        {"point", {str(seq.base_point().x()), str(seq.base_point().y())}},
        {"normalized", seq.normalized()},
    };
}

}  // namespace

void save_term_cache(const EdsSequence& seq, const std::filesystem::path& path) {
    nlohmann::json doc = identity(seq);
    doc["format"] = kFormat;
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [n, value] : seq.known_values())
        terms[std::to_string(n)] = value.get_str();
    doc["terms"] = std::move(terms);
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write cache file " + path.string());
    out << doc.dump(1) << "\n";
}

std::size_t load_term_cache(EdsSequence& seq, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read cache file " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cache file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_object())
        throw ConfigError("cache file " + path.string() + " is not a term cache");
    if (doc.value("format", "") != kFormat)
        throw ConfigError("cache file " + path.string() + " has an unknown format");
    const nlohmann::json expected = identity(seq);
    for (const char* key : {"curve", "point", "normalized"})
        if (doc[key] != expected[key])
            throw ConfigError("cache file " + path.string() + " was written for a different " + key);
    std::size_t loaded = 0;
    for (const auto& [key, value] : doc.at("terms").items()) {
        Index n = 0;
        Integer b;
        try {
            n = std::stoull(key);
            b = Integer(value.get<std::string>());
        } catch (const std::exception&) {
            throw ConfigError("cache file entry " + key + " is malformed");
        }
        if (n == 0 || b <= 0)
            throw ConfigError("cache file entry " + key + " is out of range");
        seq.preload(n, std::move(b));
        ++loaded;
    }
    return loaded;
}

}  // namespace edsp
