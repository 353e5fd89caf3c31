#ifndef TRANSBOUND_RULES_HPP
#define TRANSBOUND_RULES_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "transbound/errors.hpp"
#include "transbound/triples.hpp"
#include "transbound/vocab.hpp"

namespace transbound {

enum class RuleKind { symmetric, equivalence, implication, inverse, transitive, composition };

inline const char* to_string(RuleKind k) {
    switch (k) {
        case RuleKind::symmetric: return "symmetric";
        case RuleKind::equivalence: return "equivalence";
        case RuleKind::implication: return "implication";
        case RuleKind::inverse: return "inverse";
        case RuleKind::transitive: return "transitive";
        case RuleKind::composition: return "composition";
    }
    return "?";
}

inline std::size_t rule_arity(RuleKind k) {
    switch (k) {
        case RuleKind::symmetric:
        case RuleKind::transitive: return 1;
        case RuleKind::equivalence:
        case RuleKind::implication:
        case RuleKind::inverse: return 2;
        case RuleKind::composition: return 3;
    }
    return 0;
}

// A typed relation-pattern rule with a confidence level. For implication
// the first relation is the premise; for inverse the second is r^-1.
struct PatternRule {
    RuleKind kind = RuleKind::symmetric;
    std::vector<RelationId> relations;
    double confidence = 1.0;
};

struct RuleSet {
    std::vector<PatternRule> rules;
    std::size_t dropped_below_confidence = 0;
};

// A rule instantiated over the training split. Symmetric rules carry one
// (head, tail) instance per training triple of that relation; the
// relation-level rules need no grounding and carry none.
struct GroundedPattern {
    PatternRule rule;
    std::vector<std::pair<EntityId, EntityId>> instances;
};

// Rule file format: kind \t relation... \t confidence, arity fixed by kind,
// '#' comments and blank lines skipped. Rules below min_confidence are
// dropped and counted.
inline RuleSet load_rules(const std::filesystem::path& path, const Vocabulary& vocab,
                          double min_confidence) {
    if (min_confidence < 0.0 || min_confidence > 1.0)
        throw ConfigError("min_confidence must lie in [0, 1]");
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open rule file: " + path.string());
    RuleSet out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() < 3)
            throw ParseError("expected kind, relations, confidence in " + path.string(), lineno);
        PatternRule rule;
        const std::string& kind_s = fields.front();
        if (kind_s == "symmetric") rule.kind = RuleKind::symmetric;
        else if (kind_s == "equivalence") rule.kind = RuleKind::equivalence;
        else if (kind_s == "implication") rule.kind = RuleKind::implication;
        else if (kind_s == "inverse") rule.kind = RuleKind::inverse;
        else if (kind_s == "transitive") rule.kind = RuleKind::transitive;
        else if (kind_s == "composition") rule.kind = RuleKind::composition;
        else throw ParseError("unknown rule kind '" + kind_s + "' in " + path.string(), lineno);
        std::size_t arity = rule_arity(rule.kind);
        if (fields.size() != arity + 2)
            throw ParseError("rule kind '" + kind_s + "' takes " + std::to_string(arity) +
                             " relation(s) in " + path.string(), lineno);
        for (std::size_t i = 1; i <= arity; ++i) {
            auto rid = vocab.relation_id(fields[i]);
            if (!rid)
                throw VocabError("unknown relation '" + fields[i] + "' in " +
                                 path.string() + " line " + std::to_string(lineno));
            rule.relations.push_back(*rid);
        }
        try {
            std::size_t pos = 0;
            rule.confidence = std::stod(fields.back(), &pos);
            if (pos != fields.back().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("bad confidence '" + fields.back() + "' in " + path.string(), lineno);
        }
        if (rule.confidence < 0.0 || rule.confidence > 1.0)
            throw ParseError("confidence outside [0, 1] in " + path.string(), lineno);
        if (rule.confidence >= min_confidence)
            out.rules.push_back(std::move(rule));
        else
            ++out.dropped_below_confidence;
    }
    return out;
}

// Symmetric rules are grounded over the training split; equivalence,
// implication and inverse act on relation vectors or batch triples directly
// and get empty instance lists. Transitive and composition rules are
// rejected: they are parsed for completeness but have no regularizer form.
inline std::vector<GroundedPattern> ground_rules(const RuleSet& rules,
                                                 const std::vector<Triple>& train) {
    std::vector<GroundedPattern> out;
    out.reserve(rules.rules.size());
    for (const PatternRule& rule : rules.rules) {
        if (rule.kind == RuleKind::transitive || rule.kind == RuleKind::composition)
            throw UnsupportedRuleError(std::string("rule kind '") + to_string(rule.kind) +
                                       "' has no regularizer and cannot be grounded");
        GroundedPattern g{rule, {}};
        if (rule.kind == RuleKind::symmetric) {
            for (const Triple& t : train)
                if (t.relation == rule.relations.front())
                    g.instances.emplace_back(t.head, t.tail);
        }
        out.push_back(std::move(g));
    }
    return out;
}

} // namespace transbound

#endif
