#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "transbound/rng.hpp"
#include "transbound/rules.hpp"
#include "transbound/triples.hpp"
#include "transbound/vocab.hpp"

using namespace transbound;
namespace fs = std::filesystem;

namespace {
fs::path write_fixture(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream os(p, std::ios::trunc);
    os << content;
    return p;
}
} // namespace

TEST_CASE("load_triples encodes names in file order") {
    fs::path p = write_fixture("tb_pairs.tsv", "a\tlikes\tb\nb\tlikes\ta\n");
    Vocabulary vocab;
    std::vector<Triple> ts = load_triples(p, vocab, VocabPolicy::extend);
    REQUIRE(ts.size() == 2);
    CHECK(vocab.num_entities() == 2);
    CHECK(vocab.num_relations() == 1);
    CHECK(ts[0] == Triple{0, 0, 1});
    CHECK(ts[1] == Triple{1, 0, 0});
    CHECK(vocab.entity_name(0) == "a");
    CHECK(vocab.relation_name(0) == "likes");
}

TEST_CASE("load_triples edge cases") {
    SUBCASE("empty file leaves the vocabulary unchanged") {
        fs::path p = write_fixture("tb_empty.tsv", "");
        Vocabulary vocab;
        vocab.intern_entity("existing");
        std::vector<Triple> ts = load_triples(p, vocab, VocabPolicy::extend);
        CHECK(ts.empty());
        CHECK(vocab.num_entities() == 1);
    }
    SUBCASE("space-separated line is a parse error with its line number") {
        fs::path p = write_fixture("tb_spaces.tsv", "a likes b\n");
        Vocabulary vocab;
        CHECK_THROWS_WITH_AS(load_triples(p, vocab, VocabPolicy::extend),
                             doctest::Contains("line 1"), ParseError);
    }
    SUBCASE("too many fields is a parse error") {
        fs::path p = write_fixture("tb_four.tsv", "a\tlikes\tb\textra\n");
        Vocabulary vocab;
        CHECK_THROWS_AS(load_triples(p, vocab, VocabPolicy::extend), ParseError);
    }
    SUBCASE("comments and blank lines are skipped") {
        fs::path p = write_fixture("tb_comments.tsv", "# header\n\na\tlikes\tb\n");
        Vocabulary vocab;
        CHECK(load_triples(p, vocab, VocabPolicy::extend).size() == 1);
    }
    SUBCASE("frozen vocabulary rejects unknown names") {
        Vocabulary vocab;
        fs::path train = write_fixture("tb_train.tsv", "a\tlikes\tb\n");
        load_triples(train, vocab, VocabPolicy::extend);
        fs::path valid = write_fixture("tb_valid.tsv", "a\tlikes\tzzz\n");
        CHECK_THROWS_AS(load_triples(valid, vocab, VocabPolicy::frozen), VocabError);
        fs::path valid2 = write_fixture("tb_valid2.tsv", "a\thates\tb\n");
        CHECK_THROWS_AS(load_triples(valid2, vocab, VocabPolicy::frozen), VocabError);
    }
}

TEST_CASE("triple round-trip preserves the multiset") {
    fs::path p = write_fixture("tb_rt.tsv", "a\tr1\tb\nb\tr1\ta\na\tr2\tc\na\tr1\tb\n");
    Vocabulary vocab;
    std::vector<Triple> ts = load_triples(p, vocab, VocabPolicy::extend);
    fs::path q = fs::temp_directory_path() / "tb_rt_out.tsv";
    save_triples(q, ts, vocab);
    Vocabulary vocab2;
    std::vector<Triple> back = load_triples(q, vocab2, VocabPolicy::extend);
    REQUIRE(back.size() == ts.size());
    auto key = [&](const std::vector<Triple>& v, const Vocabulary& voc) {
        std::multiset<std::string> names;
        for (const Triple& t : v)
            names.insert(voc.entity_name(t.head) + "|" + voc.relation_name(t.relation) +
                         "|" + voc.entity_name(t.tail));
        return names;
    };
    CHECK(key(ts, vocab) == key(back, vocab2));
}

TEST_CASE("triple store enforces split disjointness and the union invariant") {
    std::vector<Triple> train{{0, 0, 1}, {1, 0, 2}};
    std::vector<Triple> valid{{2, 0, 0}};
    std::vector<Triple> test{{0, 0, 2}};
    TripleStore store(train, valid, test, 3, 1);
    CHECK(store.known_positives().size() == 4);
    for (const Triple& t : train) CHECK(store.known_positives().contains(t));
    for (const Triple& t : valid) CHECK(store.known_positives().contains(t));
    for (const Triple& t : test) CHECK(store.known_positives().contains(t));

    CHECK_THROWS_AS(TripleStore(train, {train[0]}, {}, 3, 1), ConfigError);
    CHECK_THROWS_AS(TripleStore(train, valid, {valid[0]}, 3, 1), ConfigError);
    CHECK_THROWS_AS(TripleStore({{0, 0, 5}}, {}, {}, 3, 1), ConfigError);
}

TEST_CASE("load_rules applies the confidence threshold") {
    Vocabulary vocab;
    fs::path train = write_fixture("tb_rule_train.tsv",
                                   "a\tBornIn\tb\na\tNationality\tb\nc\tspouse\td\n");
    load_triples(train, vocab, VocabPolicy::extend);

    SUBCASE("below-threshold rules are dropped and counted") {
        fs::path rules = write_fixture("tb_rules.tsv",
                                       "symmetric\tspouse\t0.9\n"
                                       "implication\tBornIn\tNationality\t0.7\n");
        RuleSet rs = load_rules(rules, vocab, 0.8);
        CHECK(rs.rules.size() == 1);
        CHECK(rs.dropped_below_confidence == 1);
        CHECK(rs.rules[0].kind == RuleKind::symmetric);
    }
    SUBCASE("zero threshold keeps everything") {
        fs::path rules = write_fixture("tb_rules0.tsv",
                                       "symmetric\tspouse\t0.9\n"
                                       "implication\tBornIn\tNationality\t0.7\n");
        RuleSet rs = load_rules(rules, vocab, 0.0);
        CHECK(rs.rules.size() == 2);
        CHECK(rs.dropped_below_confidence == 0);
    }
    SUBCASE("implication rule carries premise then conclusion") {
        fs::path rules = write_fixture("tb_rules_imp.tsv",
                                       "implication\tBornIn\tNationality\t0.9\n");
        RuleSet rs = load_rules(rules, vocab, 0.8);
        REQUIRE(rs.rules.size() == 1);
        const PatternRule& r = rs.rules[0];
        CHECK(r.kind == RuleKind::implication);
        CHECK(r.relations == std::vector<RelationId>{*vocab.relation_id("BornIn"),
                                                     *vocab.relation_id("Nationality")});
        CHECK(r.confidence == 0.9);
    }
    SUBCASE("unknown relation and bad confidence fail") {
        fs::path bad1 = write_fixture("tb_rules_bad1.tsv", "symmetric\tnope\t0.9\n");
        CHECK_THROWS_AS(load_rules(bad1, vocab, 0.5), VocabError);
        fs::path bad2 = write_fixture("tb_rules_bad2.tsv", "symmetric\tspouse\t1.5\n");
        CHECK_THROWS_AS(load_rules(bad2, vocab, 0.5), ParseError);
        fs::path bad3 = write_fixture("tb_rules_bad3.tsv", "symmetric\tspouse\n");
        CHECK_THROWS_AS(load_rules(bad3, vocab, 0.5), ParseError);
    }
}

TEST_CASE("ground_rules grounds symmetric rules only") {
    std::vector<Triple> train{{0, 0, 1}, {2, 0, 3}, {0, 1, 1}};
    RuleSet rs;
    rs.rules.push_back({RuleKind::symmetric, {0}, 0.9});
    rs.rules.push_back({RuleKind::inverse, {0, 1}, 0.9});

    std::vector<GroundedPattern> grounded = ground_rules(rs, train);
    REQUIRE(grounded.size() == 2);
    CHECK(grounded[0].instances ==
          std::vector<std::pair<EntityId, EntityId>>{{0, 1}, {2, 3}});
    CHECK(grounded[1].instances.empty());

    std::size_t with_rule = 0;
    for (const Triple& t : train)
        if (t.relation == 0) ++with_rule;
    CHECK(grounded[0].instances.size() == with_rule);

    RuleSet bad;
    bad.rules.push_back({RuleKind::transitive, {0}, 0.9});
    CHECK_THROWS_AS(ground_rules(bad, train), UnsupportedRuleError);
    RuleSet bad2;
    bad2.rules.push_back({RuleKind::composition, {0, 1, 1}, 0.9});
    CHECK_THROWS_AS(ground_rules(bad2, train), UnsupportedRuleError);
}

TEST_CASE("filtered_candidates keeps gold and drops other positives") {
    SUBCASE("worked example") {
        TripleStore store({{0, 0, 1}}, {{0, 0, 2}}, {}, 3, 1);
        std::vector<EntityId> cands = filtered_candidates(store, {0, 0, 1}, Side::tail);
        CHECK(cands == std::vector<EntityId>{0, 1});
    }
    SUBCASE("nothing to filter when the query is the only positive") {
        TripleStore store({{0, 0, 1}}, {}, {}, 4, 1);
        CHECK(filtered_candidates(store, {0, 0, 1}, Side::tail).size() == 4);
        CHECK(filtered_candidates(store, {0, 0, 1}, Side::head).size() == 4);
    }
}

TEST_CASE("filtered_candidates brute-force property on random stores") {
    Rng rng = make_stream(77, 3);
    for (int round = 0; round < 25; ++round) {
        std::size_t n = 5 + uniform_below(rng, 45);
        std::vector<Triple> train;
        TripleSet seen;
        for (int i = 0; i < 40; ++i) {
            Triple t{static_cast<EntityId>(uniform_below(rng, n)), 0,
                     static_cast<EntityId>(uniform_below(rng, n))};
            if (seen.insert(t).second) train.push_back(t);
        }
        TripleStore store(train, {}, {}, n, 1);
        const Triple& query = train[uniform_below(rng, train.size())];
        for (Side side : {Side::head, Side::tail}) {
            std::vector<EntityId> cands = filtered_candidates(store, query, side);
            EntityId gold = side == Side::head ? query.head : query.tail;
            CHECK(std::find(cands.begin(), cands.end(), gold) != cands.end());
            std::size_t conflicting = 0;
            for (const Triple& t : train) {
                bool same_other =
                    side == Side::head
                        ? (t.relation == query.relation && t.tail == query.tail)
                        : (t.relation == query.relation && t.head == query.head);
                if (same_other) ++conflicting;
            }
            CHECK(cands.size() == n - (conflicting - 1));
        }
    }
}
