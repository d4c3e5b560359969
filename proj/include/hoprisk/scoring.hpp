#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hoprisk/pmf.hpp"

namespace hoprisk {

struct CountPredicate {
    enum class Kind { exact, at_least, at_most, any };
    Kind kind = Kind::any;
    int k = 0;

    bool matches(int count) const;
};

using CountPattern = std::vector<CountPredicate>;

struct ScoreRule {
    CountPattern pattern;
    int score = 0;
};

// Ordered rules; the first rule whose pattern matches wins, otherwise the
// default score applies.
struct ScoreRuleSet {
    std::vector<ScoreRule> rules;
    int default_score = 0;

    std::size_t type_count() const { return rules.empty() ? 0 : rules.front().pattern.size(); }
};

// Predicate strings: "==k", ">=k", "<=k" or "*".
CountPredicate parse_predicate(std::string_view text);

// {"default":0,"rules":[{"pattern":["==0",">=1","==0"],"score":4},...]}
// When type sizes are given, every k must lie in 0..N_i and every pattern
// must have one entry per type. Throws ParseError.
ScoreRuleSet parse_rules(std::string_view json_text, std::optional<std::vector<int>> type_sizes = std::nullopt);
ScoreRuleSet load_rules(const std::string& path, std::optional<std::vector<int>> type_sizes = std::nullopt);

int score_vector(const ScoreRuleSet& rules, std::span<const int> counts);

// Push-forward of the PMF through score_vector.
std::map<int, double> score_distribution(const ScoreRuleSet& rules, const JointPmf& pmf);

}  // namespace hoprisk
