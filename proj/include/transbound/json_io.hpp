#ifndef TRANSBOUND_JSON_IO_HPP
#define TRANSBOUND_JSON_IO_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "transbound/evaluation.hpp"
#include "transbound/lemma_lab.hpp"
#include "transbound/rules.hpp"
#include "transbound/training.hpp"

namespace transbound {

using json = nlohmann::json;

inline json report_to_json(const RankingReport& rep, Protocol protocol) {
    json hits = json::object();
    json hits_x100 = json::object();
    for (const auto& [k, v] : rep.hits) {
        hits[std::to_string(k)] = v;
        hits_x100[std::to_string(k)] = 100.0 * v;
    }
    json ranks = json::array();
    for (const RankObservation& o : rep.per_triple_ranks)
        ranks.push_back({{"head", o.triple.head},
                         {"relation", o.triple.relation},
                         {"tail", o.triple.tail},
                         {"side", to_string(o.side)},
                         {"rank", o.rank}});
    return json{{"protocol", to_string(protocol)},
                {"mr", rep.mr},
                {"mrr", rep.mrr},
                {"mrr_x100", 100.0 * rep.mrr},
                {"hits", hits},
                {"hits_x100", hits_x100},
                {"per_triple_ranks", ranks}};
}

// Plain-text table in the usual benchmark layout (MR, MRR, Hits@10, the
// latter two scaled by 100 for reading next to published numbers).
inline std::string report_to_text(const std::string& label, const RankingReport& rep,
                                  Protocol protocol) {
    std::ostringstream os;
    os << std::left << std::setw(28) << "Model" << std::right << std::setw(10) << "MR"
       << std::setw(10) << "MRR" << std::setw(10) << "Hits@10" << "\n";
    os << std::string(58, '-') << "\n";
    double hits10 = rep.hits.count(10) ? rep.hits.at(10) : 0.0;
    os << std::left << std::setw(28) << (label + " (" + to_string(protocol) + ")")
       << std::right << std::setw(10) << std::fixed << std::setprecision(1) << rep.mr
       << std::setw(10) << std::setprecision(1) << 100.0 * rep.mrr
       << std::setw(10) << std::setprecision(1) << 100.0 * hits10 << "\n";
    return os.str();
}

inline json log_entry_to_json(const EvalLogEntry& e) {
    return json{{"epoch", e.epoch},   {"mean_loss", e.mean_loss}, {"mr", e.mr},
                {"mrr", e.mrr},       {"hits10", e.hits10},       {"wall_ms", e.wall_ms}};
}

inline json verdict_to_json(const LemmaVerdict& v) {
    json out{{"lemma", to_string(v.lemma)},
             {"model", to_string(v.model)},
             {"condition", to_string(v.condition)},
             {"mode", to_string(v.mode)},
             {"outcome", to_string(v.outcome)},
             {"note", v.evidence.note}};
    if (v.mode == LemmaMode::training) {
        out["heldout_hits1"] = v.evidence.heldout_hits1;
        out["final_relation_norm"] = v.evidence.final_relation_norm;
        out["epochs_run"] = v.evidence.epochs_run;
        return out;
    }
    if (v.outcome == VerdictOutcome::encodable_witness) {
        const EmbeddingTable& t = v.evidence.table;
        json entities = json::array(), relations = json::array();
        for (std::size_t i = 0; i < t.num_entities(); ++i) {
            auto re = t.entity_re(i); auto im = t.entity_im(i);
            entities.push_back({{"re", std::vector<double>(re.begin(), re.end())},
                                {"im", std::vector<double>(im.begin(), im.end())}});
        }
        for (std::size_t i = 0; i < t.num_relations(); ++i) {
            auto re = t.relation_re(i); auto im = t.relation_im(i);
            relations.push_back({{"re", std::vector<double>(re.begin(), re.end())},
                                 {"im", std::vector<double>(im.begin(), im.end())}});
        }
        json checks = json::array();
        for (const WitnessCheck& c : v.evidence.checks)
            checks.push_back({{"head", c.triple.head},
                              {"relation", c.triple.relation},
                              {"tail", c.triple.tail},
                              {"role", c.role},
                              {"score", c.claimed_score},
                              {"expected", to_string(c.expected)}});
        out["witness"] = json{{"entities", entities},
                              {"relations", relations},
                              {"checks", checks},
                              {"gamma1", v.evidence.region.gamma1},
                              {"gamma2", v.evidence.region.gamma2}};
    }
    return out;
}

inline std::string verdict_matrix_to_text(const std::vector<LemmaVerdict>& verdicts) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "Lemma" << std::setw(14) << "Model"
       << std::setw(6) << "Cond" << std::setw(14) << "Mode"
       << std::setw(26) << "Outcome" << "Detail\n";
    os << std::string(90, '-') << "\n";
    for (const LemmaVerdict& v : verdicts) {
        std::string detail;
        if (v.mode == LemmaMode::training) {
            std::ostringstream d;
            d << "hits@1 " << std::fixed << std::setprecision(3) << v.evidence.heldout_hits1
              << ", ||r|| " << std::scientific << std::setprecision(2)
              << v.evidence.final_relation_norm << ", epochs " << v.evidence.epochs_run;
            detail = d.str();
        } else {
            detail = v.evidence.note.substr(0, 48);
        }
        os << std::left << std::setw(6) << to_string(v.lemma) << std::setw(14)
           << to_string(v.model) << std::setw(6) << to_string(v.condition)
           << std::setw(14) << to_string(v.mode) << std::setw(26)
           << to_string(v.outcome) << detail << "\n";
    }
    return os.str();
}

inline json grounding_to_json(const std::vector<GroundedPattern>& grounded,
                              const RuleSet& rules, const Vocabulary& vocab) {
    json arr = json::array();
    for (const GroundedPattern& g : grounded) {
        json names = json::array();
        for (RelationId r : g.rule.relations) names.push_back(vocab.relation_name(r));
        json instances = json::array();
        for (const auto& [h, t] : g.instances)
            instances.push_back({{"head", vocab.entity_name(h)},
                                 {"tail", vocab.entity_name(t)}});
        arr.push_back({{"kind", to_string(g.rule.kind)},
                       {"relations", names},
                       {"confidence", g.rule.confidence},
                       {"instance_count", g.instances.size()},
                       {"instances", instances}});
    }
    return json{{"rules_kept", rules.rules.size()},
                {"rules_dropped_below_confidence", rules.dropped_below_confidence},
                {"grounded", arr}};
}

} // namespace transbound

#endif
