#include "hoprisk/scoring.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hoprisk/errors.hpp"

namespace hoprisk {

using nlohmann::json;

bool CountPredicate::matches(int count) const {
    switch (kind) {
        case Kind::exact: return count == k;
        case Kind::at_least: return count >= k;
        case Kind::at_most: return count <= k;
        case Kind::any: return true;
    }
    return false;
}

CountPredicate parse_predicate(std::string_view text) {
    if (text == "*") return {CountPredicate::Kind::any, 0};
    if (text.size() < 3) throw ParseError("bad count pattern '" + std::string(text) + "'");

    CountPredicate pred;
    const std::string_view op = text.substr(0, 2);
    if (op == "==") {
        pred.kind = CountPredicate::Kind::exact;
    } else if (op == ">=") {
        pred.kind = CountPredicate::Kind::at_least;
    } else if (op == "<=") {
        pred.kind = CountPredicate::Kind::at_most;
    } else {
        throw ParseError("bad count pattern '" + std::string(text) + "'");
    }
    const std::string_view digits = text.substr(2);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), pred.k);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || pred.k < 0) {
        throw ParseError("bad count in pattern '" + std::string(text) + "'");
    }
    return pred;
}

ScoreRuleSet parse_rules(std::string_view json_text, std::optional<std::vector<int>> type_sizes) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed rule JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("rule file must be a JSON object");
    if (!doc.contains("default") || !doc["default"].is_number_integer()) {
        throw ParseError("rule file needs an integer \"default\" score");
    }

    ScoreRuleSet set;
    set.default_score = doc["default"].get<int>();
    if (doc.contains("rules")) {
        if (!doc["rules"].is_array()) throw ParseError("\"rules\" must be an array");
        for (const json& jr : doc["rules"]) {
            if (!jr.is_object() || !jr.contains("pattern") || !jr["pattern"].is_array() ||
                !jr.contains("score") || !jr["score"].is_number_integer()) {
                throw ParseError("each rule needs a \"pattern\" array and an integer \"score\"");
            }
            ScoreRule rule;
            rule.score = jr["score"].get<int>();
            for (const json& jp : jr["pattern"]) {
                if (!jp.is_string()) throw ParseError("pattern entries must be strings");
                rule.pattern.push_back(parse_predicate(jp.get<std::string>()));
            }
            if (rule.pattern.empty()) throw ParseError("empty pattern");
            if (!set.rules.empty() && rule.pattern.size() != set.rules.front().pattern.size()) {
                throw ParseError("all patterns must have the same length");
            }
            set.rules.push_back(std::move(rule));
        }
    }

    if (type_sizes) {
        for (const ScoreRule& rule : set.rules) {
            if (rule.pattern.size() != type_sizes->size()) {
                throw ParseError("pattern length " + std::to_string(rule.pattern.size()) + " does not match " +
                                 std::to_string(type_sizes->size()) + " node types");
            }
            for (std::size_t t = 0; t < rule.pattern.size(); ++t) {
                const auto& pred = rule.pattern[t];
                if (pred.kind != CountPredicate::Kind::any && pred.k > (*type_sizes)[t]) {
                    throw ParseError("count " + std::to_string(pred.k) + " exceeds N_" + std::to_string(t + 1) +
                                     " = " + std::to_string((*type_sizes)[t]));
                }
            }
        }
    }
    return set;
}

ScoreRuleSet load_rules(const std::string& path, std::optional<std::vector<int>> type_sizes) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str(), std::move(type_sizes));
}

int score_vector(const ScoreRuleSet& rules, std::span<const int> counts) {
    for (const ScoreRule& rule : rules.rules) {
        if (rule.pattern.size() != counts.size()) throw ModelError("count vector does not match rule dimension");
        bool hit = true;
        for (std::size_t t = 0; t < counts.size() && hit; ++t) hit = rule.pattern[t].matches(counts[t]);
        if (hit) return rule.score;
    }
    return rules.default_score;
}

std::map<int, double> score_distribution(const ScoreRuleSet& rules, const JointPmf& pmf) {
    if (!rules.rules.empty() && rules.type_count() != pmf.type_count()) {
        throw ModelError("rule patterns have " + std::to_string(rules.type_count()) + " entries, PMF has " +
                         std::to_string(pmf.type_count()) + " types");
    }
    std::map<int, double> dist;
    for (std::size_t flat = 0; flat < pmf.cell_count(); ++flat) {
        if (pmf[flat] == 0.0) continue;
        dist[score_vector(rules, pmf.counts_of(flat))] += pmf[flat];
    }
    return dist;
}

}  // namespace hoprisk
