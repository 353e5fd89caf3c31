#ifndef TRANSBOUND_PATTERN_KG_HPP
#define TRANSBOUND_PATTERN_KG_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "transbound/errors.hpp"
#include "transbound/rng.hpp"
#include "transbound/triples.hpp"

namespace transbound {

// Synthetic single-relation KGs realizing one relation pattern each, with a
// held-out completion set for training-based checks.
enum class Pattern {
    reflexive,
    symmetric,
    neither_reflexive_nor_irreflexive,
    reflexive_antisymmetric,
    reflexive_nontransitive,
    grid_pattern,
};

inline const char* to_string(Pattern p) {
    switch (p) {
        case Pattern::reflexive: return "reflexive";
        case Pattern::symmetric: return "symmetric";
        case Pattern::neither_reflexive_nor_irreflexive: return "neither";
        case Pattern::reflexive_antisymmetric: return "reflexive_antisymmetric";
        case Pattern::reflexive_nontransitive: return "reflexive_nontransitive";
        case Pattern::grid_pattern: return "grid";
    }
    return "?";
}

struct PatternKG {
    Pattern pattern = Pattern::symmetric;
    std::size_t num_entities = 0;
    std::vector<Triple> train;
    std::vector<Triple> heldout;    // true completions the model should recover
    std::vector<Triple> negatives;  // ground-truth false triples
    // Completion queries range over the pattern's own domain. Patterns built
    // from distinct-entity pairs exclude the degenerate self-completion
    // (e, r, e); reflexive-style patterns keep it, since loops are their
    // ground truth.
    bool self_completions = false;

    TripleStore to_store() const {
        return TripleStore(train, heldout, {}, num_entities, 1);
    }
};

namespace detail {
inline void verify_pattern_kg(const PatternKG& kg) {
    TripleSet train_set(kg.train.begin(), kg.train.end());
    TripleSet pos(kg.train.begin(), kg.train.end());
    pos.insert(kg.heldout.begin(), kg.heldout.end());
    for (const Triple& t : kg.heldout)
        if (train_set.contains(t))
            throw ConfigError("pattern generator produced overlapping held-out triple");
    for (const Triple& t : kg.negatives)
        if (pos.contains(t))
            throw ConfigError("pattern generator labeled a positive as negative");
    if (kg.pattern == Pattern::symmetric) {
        for (const Triple& t : kg.heldout)
            if (!train_set.contains({t.tail, t.relation, t.head}))
                throw ConfigError("held-out symmetric completion lacks its trained direction");
    }
}
} // namespace detail

inline PatternKG generate_pattern_kg(Pattern pattern, std::size_t n_entities,
                                     std::uint64_t seed) {
    if (n_entities < 4)
        throw ConfigError("pattern KG needs at least 4 entities");
    Rng rng = make_stream(seed, 0x7061747465726eULL, static_cast<std::uint64_t>(pattern));
    PatternKG kg;
    kg.pattern = pattern;
    kg.num_entities = n_entities;
    kg.self_completions = pattern == Pattern::reflexive ||
                          pattern == Pattern::neither_reflexive_nor_irreflexive;
    const RelationId r = 0;
    auto nth = [&](std::size_t i) { return static_cast<EntityId>(i); };

    switch (pattern) {
        case Pattern::reflexive: {
            std::vector<std::size_t> order(n_entities);
            for (std::size_t i = 0; i < n_entities; ++i) order[i] = i;
            fisher_yates_shuffle(order, rng);
            std::size_t held = std::max<std::size_t>(1, n_entities / 5);
            for (std::size_t i = 0; i < n_entities; ++i) {
                Triple t{nth(order[i]), r, nth(order[i])};
                (i < held ? kg.heldout : kg.train).push_back(t);
            }
            break;
        }
        case Pattern::symmetric: {
            std::set<std::pair<EntityId, EntityId>> pairs;
            while (pairs.size() < 2 * n_entities) {
                EntityId a = static_cast<EntityId>(uniform_below(rng, n_entities));
                EntityId b = static_cast<EntityId>(uniform_below(rng, n_entities));
                if (a == b) continue;
                pairs.insert({std::min(a, b), std::max(a, b)});
            }
            std::vector<std::pair<EntityId, EntityId>> ordered(pairs.begin(), pairs.end());
            fisher_yates_shuffle(ordered, rng);
            std::size_t held = ordered.size() / 5;
            for (std::size_t i = 0; i < ordered.size(); ++i) {
                auto [a, b] = ordered[i];
                kg.train.push_back({a, r, b});
                (i < held ? kg.heldout : kg.train).push_back({b, r, a});
            }
            break;
        }
        case Pattern::neither_reflexive_nor_irreflexive: {
            std::vector<std::size_t> order(n_entities);
            for (std::size_t i = 0; i < n_entities; ++i) order[i] = i;
            fisher_yates_shuffle(order, rng);
            std::size_t half = n_entities / 2;
            std::size_t held = std::max<std::size_t>(1, half / 5);
            for (std::size_t i = 0; i < half; ++i) {
                Triple t{nth(order[i]), r, nth(order[i])};
                (i < held ? kg.heldout : kg.train).push_back(t);
            }
            for (std::size_t i = half; i < n_entities; ++i)
                kg.negatives.push_back({nth(order[i]), r, nth(order[i])});
            break;
        }
        case Pattern::reflexive_antisymmetric: {
            for (std::size_t i = 0; i < n_entities; ++i)
                kg.train.push_back({nth(i), r, nth(i)});
            std::set<std::pair<EntityId, EntityId>> pairs;
            while (pairs.size() < n_entities) {
                EntityId a = static_cast<EntityId>(uniform_below(rng, n_entities));
                EntityId b = static_cast<EntityId>(uniform_below(rng, n_entities));
                if (a == b) continue;
                if (pairs.contains({b, a})) continue;
                pairs.insert({a, b});
            }
            std::vector<std::pair<EntityId, EntityId>> ordered(pairs.begin(), pairs.end());
            fisher_yates_shuffle(ordered, rng);
            std::size_t held = ordered.size() / 5;
            for (std::size_t i = 0; i < ordered.size(); ++i) {
                auto [a, b] = ordered[i];
                (i < held ? kg.heldout : kg.train).push_back({a, r, b});
                kg.negatives.push_back({b, r, a});
            }
            break;
        }
        case Pattern::reflexive_nontransitive: {
            for (std::size_t i = 0; i < n_entities; ++i)
                kg.train.push_back({nth(i), r, nth(i)});
            std::vector<std::size_t> order(n_entities);
            for (std::size_t i = 0; i < n_entities; ++i) order[i] = i;
            fisher_yates_shuffle(order, rng);
            std::size_t chains = n_entities / 3;
            std::size_t held = std::max<std::size_t>(1, chains / 5);
            for (std::size_t c = 0; c < chains; ++c) {
                EntityId a = nth(order[3 * c]), b = nth(order[3 * c + 1]),
                         z = nth(order[3 * c + 2]);
                (c < held ? kg.heldout : kg.train).push_back({a, r, b});
                kg.train.push_back({b, r, z});
                kg.negatives.push_back({a, r, z});
            }
            break;
        }
        case Pattern::grid_pattern: {
            std::size_t k = std::min<std::size_t>(4, n_entities - 2);
            // delta = entities [0, k); full-row entities relate to all of
            // delta, the sparse entity relates to exactly one member.
            EntityId sparse = nth(k);
            kg.train.push_back({sparse, r, nth(0)});
            for (std::size_t j = 1; j < k; ++j)
                kg.negatives.push_back({sparse, r, nth(j)});
            std::size_t row_count = 0;
            for (std::size_t e = k + 1; e < n_entities; ++e) {
                for (std::size_t j = 0; j < k; ++j) {
                    Triple t{nth(e), r, nth(j)};
                    bool hold = (row_count % 5 == 4) && j + 1 == k;
                    (hold ? kg.heldout : kg.train).push_back(t);
                }
                ++row_count;
            }
            break;
        }
    }
    detail::verify_pattern_kg(kg);
    return kg;
}

} // namespace transbound

#endif
