#ifndef TRANSBOUND_TESTS_SUPPORT_HPP
#define TRANSBOUND_TESTS_SUPPORT_HPP

#include <functional>
#include <vector>

#include "transbound/complex.hpp"
#include "transbound/embedding.hpp"
#include "transbound/rng.hpp"

namespace tbtest {

using namespace transbound;

inline EmbeddingTable make_table(Mode mode, const std::vector<ComplexVector>& entities,
                                 const std::vector<ComplexVector>& relations) {
    EmbeddingTable t(entities.size(), relations.size(), entities.front().dim(), mode);
    for (std::size_t i = 0; i < entities.size(); ++i) t.set_entity(i, entities[i]);
    for (std::size_t i = 0; i < relations.size(); ++i) t.set_relation(i, relations[i]);
    return t;
}

inline EmbeddingTable random_table(Mode mode, std::size_t ne, std::size_t nr,
                                   std::size_t d, Rng& rng, double scale = 2.0) {
    EmbeddingTable t(ne, nr, d, mode);
    for (std::size_t e = 0; e < ne; ++e) {
        for (double& x : t.entity_re(e)) x = uniform_range(rng, -scale, scale);
        if (mode == Mode::complex_)
            for (double& x : t.entity_im(e)) x = uniform_range(rng, -scale, scale);
    }
    for (std::size_t r = 0; r < nr; ++r) {
        for (double& x : t.relation_re(r)) x = uniform_range(rng, -scale, scale);
        if (mode == Mode::complex_)
            for (double& x : t.relation_im(r)) x = uniform_range(rng, -scale, scale);
    }
    return t;
}

// Central finite difference on one coordinate of a mutable table.
inline double central_difference(double* coord, const std::function<double()>& f,
                                 double h = 1e-5) {
    double orig = *coord;
    *coord = orig + h;
    double fp = f();
    *coord = orig - h;
    double fm = f();
    *coord = orig;
    return (fp - fm) / (2.0 * h);
}

inline bool close_rel(double a, double b, double tol) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

} // namespace tbtest

#endif
