#ifndef TRANSBOUND_EVALUATION_HPP
#define TRANSBOUND_EVALUATION_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "transbound/scoring.hpp"
#include "transbound/triples.hpp"

namespace transbound {

enum class Protocol { filtered, raw };
enum class TieMode { mid, optimistic, pessimistic };

inline const char* to_string(Protocol p) { return p == Protocol::filtered ? "filtered" : "raw"; }

// Rank of the gold score among candidate scores. Mid-rank tie handling:
// 1 + #strictly-smaller + floor(#equal / 2); the optimistic and pessimistic
// modes count equals as 0 or all.
inline std::size_t rank_from_scores(double gold_score,
                                    const std::vector<double>& other_scores,
                                    TieMode tie = TieMode::mid) {
    std::size_t smaller = 0, equal = 0;
    for (double s : other_scores) {
        if (s < gold_score) ++smaller;
        else if (s == gold_score) ++equal;
    }
    switch (tie) {
        case TieMode::optimistic: return 1 + smaller;
        case TieMode::pessimistic: return 1 + smaller + equal;
        case TieMode::mid: break;
    }
    return 1 + smaller + equal / 2;
}

inline std::size_t rank_one(const ScoreModel& model, const TripleStore& store,
                            const Triple& query, Side side,
                            Protocol protocol = Protocol::filtered,
                            TieMode tie = TieMode::mid) {
    EntityId gold = side == Side::head ? query.head : query.tail;
    double gold_score = score(model, query);
    std::vector<double> others;
    others.reserve(store.num_entities());
    auto consider = [&](EntityId e) {
        if (e == gold) return;
        Triple probe = query;
        (side == Side::head ? probe.head : probe.tail) = e;
        others.push_back(score(model, probe));
    };
    if (protocol == Protocol::filtered) {
        for (EntityId e : filtered_candidates(store, query, side)) consider(e);
    } else {
        for (EntityId e = 0; e < store.num_entities(); ++e) consider(e);
    }
    return rank_from_scores(gold_score, others, tie);
}

struct RankObservation {
    Triple triple;
    Side side = Side::head;
    std::size_t rank = 1;
};

// Filtered (or raw) link-prediction report. The aggregates are exactly
// recomputable from per_triple_ranks; hits holds k -> fraction of ranks <= k.
struct RankingReport {
    double mr = 0.0;
    double mrr = 0.0;
    std::map<std::size_t, double> hits;
    std::vector<RankObservation> per_triple_ranks;

    static RankingReport from_ranks(std::vector<RankObservation> obs,
                                    const std::vector<std::size_t>& ks = {1, 3, 10}) {
        RankingReport rep;
        rep.per_triple_ranks = std::move(obs);
        double n = static_cast<double>(rep.per_triple_ranks.size());
        for (std::size_t k : ks) rep.hits[k] = 0.0;
        for (const RankObservation& o : rep.per_triple_ranks) {
            rep.mr += static_cast<double>(o.rank);
            rep.mrr += 1.0 / static_cast<double>(o.rank);
            for (std::size_t k : ks)
                if (o.rank <= k) rep.hits[k] += 1.0;
        }
        if (n > 0) {
            rep.mr /= n;
            rep.mrr /= n;
            for (auto& [k, v] : rep.hits) v /= n;
        }
        return rep;
    }
};

// Ranks every triple of the split on both sides (2 observations per triple).
inline RankingReport evaluate(const ScoreModel& model, const TripleStore& store,
                              const std::vector<Triple>& split,
                              Protocol protocol = Protocol::filtered,
                              TieMode tie = TieMode::mid) {
    std::vector<RankObservation> obs;
    obs.reserve(2 * split.size());
    for (const Triple& q : split) {
        obs.push_back({q, Side::head, rank_one(model, store, q, Side::head, protocol, tie)});
        obs.push_back({q, Side::tail, rank_one(model, store, q, Side::tail, protocol, tie)});
    }
    return RankingReport::from_ranks(std::move(obs));
}

} // namespace transbound

#endif
