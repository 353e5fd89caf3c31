#ifndef TRANSBOUND_SAMPLING_HPP
#define TRANSBOUND_SAMPLING_HPP

#include <vector>

#include "transbound/errors.hpp"
#include "transbound/rng.hpp"
#include "transbound/triples.hpp"

namespace transbound {

struct NegativeSample {
    Triple origin;
    Triple corrupted;
    Side side = Side::tail;
};

// Uniform corruption: a fair coin picks the side, then a uniform entity
// different from the original replaces it. Accidental hits on known
// positives are kept unless filtering is requested (ablation flag).
inline std::vector<NegativeSample> sample_negatives(const Triple& positive,
                                                    const TripleStore& store,
                                                    std::size_t count, Rng& rng,
                                                    bool filter_known_positives = false) {
    std::size_t n = store.num_entities();
    if (n < 2) throw ConfigError("negative sampling needs at least 2 entities");
    std::vector<NegativeSample> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        NegativeSample s;
        s.origin = positive;
        for (int attempt = 0; attempt < 100; ++attempt) {
            s.side = (rng() & 1u) ? Side::head : Side::tail;
            EntityId original = s.side == Side::head ? positive.head : positive.tail;
            EntityId e = static_cast<EntityId>(uniform_below(rng, n - 1));
            if (e >= original) ++e;
            s.corrupted = positive;
            (s.side == Side::head ? s.corrupted.head : s.corrupted.tail) = e;
            if (!filter_known_positives || !store.known_positives().contains(s.corrupted))
                break;
        }
        out.push_back(s);
    }
    return out;
}

} // namespace transbound

#endif
