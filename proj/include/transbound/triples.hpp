#ifndef TRANSBOUND_TRIPLES_HPP
#define TRANSBOUND_TRIPLES_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "transbound/errors.hpp"
#include "transbound/vocab.hpp"

namespace transbound {

struct Triple {
    EntityId head = 0;
    RelationId relation = 0;
    EntityId tail = 0;

    bool operator==(const Triple&) const = default;
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const {
        std::uint64_t x = (static_cast<std::uint64_t>(t.head) << 42) ^
                          (static_cast<std::uint64_t>(t.relation) << 21) ^
                          static_cast<std::uint64_t>(t.tail);
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

enum class Side { head, tail };

inline const char* to_string(Side s) { return s == Side::head ? "head" : "tail"; }

// Train/valid/test splits plus the known-positive set over all three,
// which backs the filtered ranking protocol. Immutable once built.
class TripleStore {
public:
    TripleStore(std::vector<Triple> train, std::vector<Triple> valid,
                std::vector<Triple> test, std::size_t num_entities,
                std::size_t num_relations)
        : train_(std::move(train)), valid_(std::move(valid)), test_(std::move(test)),
          num_entities_(num_entities), num_relations_(num_relations) {
        TripleSet train_set(train_.begin(), train_.end());
        TripleSet valid_set(valid_.begin(), valid_.end());
        TripleSet test_set(test_.begin(), test_.end());
        for (const Triple& t : valid_set)
            if (train_set.contains(t))
                throw ConfigError("train and valid splits overlap");
        for (const Triple& t : test_set)
            if (train_set.contains(t) || valid_set.contains(t))
                throw ConfigError("test split overlaps another split");
        known_positives_ = std::move(train_set);
        known_positives_.insert(valid_set.begin(), valid_set.end());
        known_positives_.insert(test_set.begin(), test_set.end());
        check_ids(train_);
        check_ids(valid_);
        check_ids(test_);
    }

    const std::vector<Triple>& train() const { return train_; }
    const std::vector<Triple>& valid() const { return valid_; }
    const std::vector<Triple>& test() const { return test_; }
    const TripleSet& known_positives() const { return known_positives_; }
    std::size_t num_entities() const { return num_entities_; }
    std::size_t num_relations() const { return num_relations_; }

private:
    void check_ids(const std::vector<Triple>& ts) const {
        for (const Triple& t : ts)
            if (t.head >= num_entities_ || t.tail >= num_entities_ ||
                t.relation >= num_relations_)
                throw ConfigError("triple id out of vocabulary range");
    }

    std::vector<Triple> train_, valid_, test_;
    std::size_t num_entities_ = 0;
    std::size_t num_relations_ = 0;
    TripleSet known_positives_;
};

enum class VocabPolicy { extend, frozen };

// Reads a tab-separated triple file (head \t relation \t tail, one per line,
// '#' comments and blank lines skipped). Names are interned in file order;
// a frozen vocabulary rejects unseen names instead.
inline std::vector<Triple> load_triples(const std::filesystem::path& path,
                                        Vocabulary& vocab, VocabPolicy policy) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open triple file: " + path.string());
    std::vector<Triple> triples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        std::size_t t3 = t2 == std::string::npos ? std::string::npos : line.find('\t', t2 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos || t3 != std::string::npos)
            throw ParseError("expected 3 tab-separated fields in " + path.string(), lineno);
        std::string h = line.substr(0, t1);
        std::string r = line.substr(t1 + 1, t2 - t1 - 1);
        std::string t = line.substr(t2 + 1);
        if (h.empty() || r.empty() || t.empty())
            throw ParseError("empty field in " + path.string(), lineno);
        Triple triple;
        if (policy == VocabPolicy::extend) {
            triple.head = vocab.intern_entity(h);
            triple.relation = vocab.intern_relation(r);
            triple.tail = vocab.intern_entity(t);
        } else {
            auto hid = vocab.entity_id(h);
            auto rid = vocab.relation_id(r);
            auto tid = vocab.entity_id(t);
            if (!hid || !tid)
                throw VocabError("unknown entity '" + (!hid ? h : t) + "' in " +
                                 path.string() + " line " + std::to_string(lineno));
            if (!rid)
                throw VocabError("unknown relation '" + r + "' in " + path.string() +
                                 " line " + std::to_string(lineno));
            triple = {*hid, *rid, *tid};
        }
        triples.push_back(triple);
    }
    return triples;
}

inline void save_triples(const std::filesystem::path& path,
                         const std::vector<Triple>& triples, const Vocabulary& vocab) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot open triple file for writing: " + path.string());
    for (const Triple& t : triples)
        os << vocab.entity_name(t.head) << '\t' << vocab.relation_name(t.relation)
           << '\t' << vocab.entity_name(t.tail) << '\n';
}

// Candidate entities for ranking a query on one side under the filtered
// protocol: an entity stays if substituting it reproduces the query itself
// or yields a triple that is not a known positive. The gold entity is
// always a candidate.
inline std::vector<EntityId> filtered_candidates(const TripleStore& store,
                                                 const Triple& query, Side side) {
    std::vector<EntityId> out;
    out.reserve(store.num_entities());
    for (EntityId e = 0; e < store.num_entities(); ++e) {
        Triple probe = query;
        (side == Side::head ? probe.head : probe.tail) = e;
        if (probe == query || !store.known_positives().contains(probe))
            out.push_back(e);
    }
    return out;
}

} // namespace transbound

#endif
