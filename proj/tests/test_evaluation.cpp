#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "transbound/evaluation.hpp"

using namespace transbound;
using tbtest::random_table;

namespace {

// Independent ranker: scores every substitution, applies the filter by hand,
// then counts smaller/equal scores directly.
std::size_t brute_force_rank(const ScoreModel& model, const TripleStore& store,
                             const Triple& query, Side side, Protocol protocol,
                             TieMode tie) {
    EntityId gold = side == Side::head ? query.head : query.tail;
    double gold_score = score(model, query);
    std::size_t smaller = 0, equal = 0;
    for (EntityId e = 0; e < store.num_entities(); ++e) {
        if (e == gold) continue;
        Triple probe = query;
        (side == Side::head ? probe.head : probe.tail) = e;
        if (protocol == Protocol::filtered && store.known_positives().contains(probe))
            continue;
        double s = score(model, probe);
        if (s < gold_score) ++smaller;
        else if (s == gold_score) ++equal;
    }
    if (tie == TieMode::optimistic) return 1 + smaller;
    if (tie == TieMode::pessimistic) return 1 + smaller + equal;
    return 1 + smaller + equal / 2;
}

TripleStore random_store(Rng& rng, std::size_t n_entities, std::size_t n_relations) {
    TripleSet seen;
    std::vector<Triple> all;
    for (int i = 0; i < 60; ++i) {
        Triple t{static_cast<EntityId>(uniform_below(rng, n_entities)),
                 static_cast<RelationId>(uniform_below(rng, n_relations)),
                 static_cast<EntityId>(uniform_below(rng, n_entities))};
        if (seen.insert(t).second) all.push_back(t);
    }
    std::size_t n_test = all.size() / 4;
    std::vector<Triple> test(all.begin(), all.begin() + n_test);
    std::vector<Triple> train(all.begin() + n_test, all.end());
    return TripleStore(train, {}, test, n_entities, n_relations);
}

} // namespace

TEST_CASE("rank_from_scores handles ties mid-rank") {
    CHECK(rank_from_scores(0.1, {0.5, 0.9, 0.7}) == 1);
    CHECK(rank_from_scores(0.3, {0.1, 0.2}) == 3);
    CHECK(rank_from_scores(0.1, {0.1, 0.1, 0.9}) == 2);
    CHECK(rank_from_scores(0.1, {0.1, 0.1, 0.9}, TieMode::optimistic) == 1);
    CHECK(rank_from_scores(0.1, {0.1, 0.1, 0.9}, TieMode::pessimistic) == 3);
}

TEST_CASE("positive rescaling of all scores never changes a rank") {
    Rng rng = make_stream(5, 5);
    for (int i = 0; i < 200; ++i) {
        double gold = uniform_range(rng, 0.0, 2.0);
        std::vector<double> others;
        for (int j = 0; j < 12; ++j) others.push_back(uniform_range(rng, 0.0, 2.0));
        double c = uniform_range(rng, 0.1, 10.0);
        std::vector<double> scaled = others;
        for (double& x : scaled) x *= c;
        CHECK(rank_from_scores(gold, others) == rank_from_scores(gold * c, scaled));
    }
}

TEST_CASE("report aggregates follow from the rank list") {
    SUBCASE("all gold ranked first") {
        std::vector<RankObservation> obs{{{0, 0, 1}, Side::head, 1},
                                         {{0, 0, 1}, Side::tail, 1}};
        RankingReport rep = RankingReport::from_ranks(obs);
        CHECK(rep.mr == 1.0);
        CHECK(rep.mrr == 1.0);
        CHECK(rep.hits.at(10) == 1.0);
    }
    SUBCASE("ranks 1 and 4") {
        std::vector<RankObservation> obs{{{0, 0, 1}, Side::head, 1},
                                         {{0, 0, 1}, Side::tail, 4}};
        RankingReport rep = RankingReport::from_ranks(obs);
        CHECK(rep.mr == 2.5);
        CHECK(rep.mrr == doctest::Approx(0.625).epsilon(1e-15));
        CHECK(rep.hits.at(3) == 0.5);
    }
}

TEST_CASE("evaluate equals the brute-force ranker on random stores") {
    Rng rng = make_stream(100, 1);
    for (int round = 0; round < 10; ++round) {
        TripleStore store = random_store(rng, 20, 3);
        Mode mode = round % 2 ? Mode::complex_ : Mode::real;
        ModelKind kind = mode == Mode::real ? ModelKind::transe : ModelKind::transcomplex;
        EmbeddingTable table = random_table(mode, 20, 3, 6, rng);
        ScoreModel model(kind, round % 3 ? Norm::L2 : Norm::L1, table);
        for (Protocol protocol : {Protocol::filtered, Protocol::raw}) {
            RankingReport rep = evaluate(model, store, store.test(), protocol);
            REQUIRE(rep.per_triple_ranks.size() == 2 * store.test().size());
            double mr = 0.0, mrr = 0.0;
            std::size_t hits10 = 0;
            for (const RankObservation& o : rep.per_triple_ranks) {
                std::size_t expect = brute_force_rank(model, store, o.triple, o.side,
                                                      protocol, TieMode::mid);
                CHECK(o.rank == expect);
                CHECK(o.rank >= 1);
                std::size_t cand = protocol == Protocol::raw
                                       ? store.num_entities()
                                       : filtered_candidates(store, o.triple, o.side).size();
                CHECK(o.rank <= cand);
                mr += static_cast<double>(o.rank);
                mrr += 1.0 / static_cast<double>(o.rank);
                if (o.rank <= 10) ++hits10;
            }
            double n = static_cast<double>(rep.per_triple_ranks.size());
            CHECK(rep.mr == doctest::Approx(mr / n).epsilon(1e-15));
            CHECK(rep.mrr == doctest::Approx(mrr / n).epsilon(1e-15));
            CHECK(rep.hits.at(10) ==
                  doctest::Approx(static_cast<double>(hits10) / n).epsilon(1e-15));
        }
        // Filtering can only improve (never worsen) a rank.
        RankingReport filtered = evaluate(model, store, store.test(), Protocol::filtered);
        RankingReport raw = evaluate(model, store, store.test(), Protocol::raw);
        for (std::size_t i = 0; i < filtered.per_triple_ranks.size(); ++i)
            CHECK(filtered.per_triple_ranks[i].rank <= raw.per_triple_ranks[i].rank);
    }
}
