#include "edsp/report_json.hpp"

#include "edsp/errors.hpp"

namespace edsp {

using nlohmann::json;

json to_json(const Solution& s) {
    return {{"m", s.m}, {"d", s.d}, {"k", s.k}, {"ell", s.ell}, {"y", s.y.get_str()}};
}

Solution solution_from_json(const json& j) {
    try {
        Solution s;
        s.m = j.at("m").get<std::uint64_t>();
        s.d = j.at("d").get<std::uint64_t>();
        s.k = j.at("k").get<std::uint64_t>();
        s.ell = j.at("ell").get<unsigned>();
        s.y = Integer(j.at("y").get<std::string>());
        return s;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed solution object: ") + e.what());
    }
}

json to_json(const BoundCertificate& c) {
    json md = json::object();
    for (const auto& [k, bound] : c.md_bound_per_k)
        md[std::to_string(k)] = bound.get_str();
    json scans = json::array();
    for (const auto& s : c.scans)
        scans.push_back({{"regime", to_string(s.regime)},
                         {"d", s.d == 0 ? json("generic") : json(s.d)},
                         {"k_from", s.k_from},
                         {"k_to", s.k_to},
                         {"min_w0_lower", s.min_w0_lower},
                         {"argmin_k", s.argmin_k}});
    json just = json::array();
    for (const auto& j : c.justification)
        just.push_back({{"lemma", j.lemma}, {"statement", j.statement}, {"holds", j.holds}});
    return {{"ell", c.ell},
            {"N", c.n_ell},
            {"M", c.m_ell},
            {"k_max", c.k_max},
            {"md_bound_per_k", std::move(md)},
            {"d1_small_m_bound", c.d1_small_m_bound},
            {"horizon", c.horizon},
            {"exclusion_scans", std::move(scans)},
            {"unexcluded_k", c.unexcluded},
            {"justification", std::move(just)}};
}

json to_json(const SearchReport& r) {
    json stats = {{"candidates", r.stats.candidates},
                  {"pruned_coprime_term", r.stats.pruned_coprime},
                  {"pruned_w0", r.stats.pruned_w0},
                  {"pruned_valuation", r.stats.pruned_valuation},
                  {"products_tested", r.stats.products_tested},
                  {"w0_rule_disabled_k", r.stats.w0_rule_disabled}};
    json completeness = r.truncated ? json{{"status", "truncated"}, {"reason", r.truncation}}
                                    : json{{"status", "complete"}};
    return {{"report",
             {{"solutions", r.solutions.size()},
              {"completeness", std::move(completeness)},
              {"conditional", r.conditional},
              {"power_set_provenance", to_string(r.provenance)},
              {"normalized_by_b1", r.normalized},
              {"max_index", r.max_index ? json(*r.max_index) : json(nullptr)},
              {"certificate", to_json(r.certificate)},
              {"statistics", std::move(stats)}}}};
}

json to_json(const VerifyReport& r) {
    json checks = json::object();
    for (const auto& [name, n] : r.checks)
        checks[name] = n;
    json violations = json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"identity", v.identity}, {"detail", v.detail}});
    return {{"passed", r.passed()},
            {"total_checks", r.total_checks()},
            {"checks", std::move(checks)},
            {"violations", std::move(violations)},
            {"warnings", r.warnings}};
}

}  // namespace edsp
