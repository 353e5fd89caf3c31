#ifndef TRANSBOUND_SCORING_HPP
#define TRANSBOUND_SCORING_HPP

#include <cmath>
#include <cstddef>

#include "transbound/complex.hpp"
#include "transbound/embedding.hpp"
#include "transbound/errors.hpp"
#include "transbound/triples.hpp"

namespace transbound {

enum class ModelKind { transe, transcomplex };

inline const char* to_string(ModelKind k) {
    return k == ModelKind::transe ? "transe" : "transcomplex";
}

// Translation scoring over an embedding table. The real-space model scores
// ||h + r - t||; the complex-space model translates onto the conjugate of
// the tail, ||h + r - conj(t)||, so the residual's imaginary part is
// Im(h) + Im(r) + Im(t).
struct ScoreModel {
    ModelKind kind = ModelKind::transe;
    Norm norm = Norm::L2;
    const EmbeddingTable* table = nullptr;

    ScoreModel(ModelKind k, Norm n, const EmbeddingTable& t)
        : kind(k), norm(n), table(&t) {
        if (k == ModelKind::transe && t.mode() != Mode::real)
            throw ConfigError("real-space model requires a real-mode table");
        if (k == ModelKind::transcomplex && t.mode() != Mode::complex_)
            throw ConfigError("complex-space model requires a complex-mode table");
    }
};

namespace detail {
inline void check_ids(const ScoreModel& m, const Triple& t) {
    if (t.head >= m.table->num_entities() || t.tail >= m.table->num_entities())
        throw ConfigError("entity id out of range for the embedding table");
    if (t.relation >= m.table->num_relations())
        throw ConfigError("relation id out of range for the embedding table");
}
} // namespace detail

inline ComplexVector residual(const ScoreModel& m, const Triple& t) {
    detail::check_ids(m, t);
    const EmbeddingTable& tab = *m.table;
    std::size_t d = tab.dim();
    ComplexVector eps(d);
    auto h_re = tab.entity_re(t.head), t_re = tab.entity_re(t.tail);
    auto h_im = tab.entity_im(t.head), t_im = tab.entity_im(t.tail);
    auto r_re = tab.relation_re(t.relation), r_im = tab.relation_im(t.relation);
    for (std::size_t i = 0; i < d; ++i) {
        eps.re[i] = h_re[i] + r_re[i] - t_re[i];
        eps.im[i] = h_im[i] + r_im[i] + t_im[i];
    }
    return eps;
}

inline double score(const ScoreModel& m, const Triple& t) {
    detail::check_ids(m, t);
    const EmbeddingTable& tab = *m.table;
    std::size_t d = tab.dim();
    auto h_re = tab.entity_re(t.head), t_re = tab.entity_re(t.tail);
    auto h_im = tab.entity_im(t.head), t_im = tab.entity_im(t.tail);
    auto r_re = tab.relation_re(t.relation), r_im = tab.relation_im(t.relation);
    double acc = 0.0;
    if (m.norm == Norm::L2) {
        for (std::size_t i = 0; i < d; ++i) {
            double re = h_re[i] + r_re[i] - t_re[i];
            double im = h_im[i] + r_im[i] + t_im[i];
            acc += re * re + im * im;
        }
        return std::sqrt(acc);
    }
    for (std::size_t i = 0; i < d; ++i) {
        double re = h_re[i] + r_re[i] - t_re[i];
        double im = h_im[i] + r_im[i] + t_im[i];
        acc += std::fabs(re) + std::fabs(im);
    }
    return acc;
}

// Gradients of the score with respect to the head, relation and tail rows.
// The tail gradient is conjugate-adjusted: real part negated, imaginary
// part kept, matching d(eps_im)/d(Im(t)) = +1 in complex mode. At eps = 0
// (and on L1 components at 0) the subgradient is zero.
struct ScoreGradients {
    ComplexVector head;
    ComplexVector rel;
    ComplexVector tail;
};

inline ScoreGradients score_gradients(const ScoreModel& m, const Triple& t) {
    ComplexVector eps = residual(m, t);
    std::size_t d = eps.dim();
    ScoreGradients g{ComplexVector(d), ComplexVector(d), ComplexVector(d)};
    if (m.norm == Norm::L2) {
        double n = norm(eps, Norm::L2);
        if (n == 0.0) return g;
        for (std::size_t i = 0; i < d; ++i) {
            double gre = eps.re[i] / n;
            double gim = eps.im[i] / n;
            g.head.re[i] = gre;  g.head.im[i] = gim;
            g.rel.re[i] = gre;   g.rel.im[i] = gim;
            g.tail.re[i] = -gre; g.tail.im[i] = gim;
        }
        return g;
    }
    for (std::size_t i = 0; i < d; ++i) {
        double gre = sign0(eps.re[i]);
        double gim = sign0(eps.im[i]);
        g.head.re[i] = gre;  g.head.im[i] = gim;
        g.rel.re[i] = gre;   g.rel.im[i] = gim;
        g.tail.re[i] = -gre; g.tail.im[i] = gim;
    }
    return g;
}

} // namespace transbound

#endif
