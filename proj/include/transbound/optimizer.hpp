#ifndef TRANSBOUND_OPTIMIZER_HPP
#define TRANSBOUND_OPTIMIZER_HPP

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "transbound/embedding.hpp"
#include "transbound/errors.hpp"

namespace transbound {

// One Adagrad update on a parameter row:
//   G += g*g elementwise; param -= lr * g / (sqrt(G) + eps).
// Zero gradients leave both the parameters and the accumulator untouched.
inline void adagrad_step(std::span<double> param, std::span<const double> grad,
                         std::span<double> accum, double learning_rate,
                         double epsilon = 1e-8) {
    for (std::size_t i = 0; i < param.size(); ++i) {
        double g = grad[i];
        if (!std::isfinite(g))
            throw NumericError("non-finite gradient component at index " + std::to_string(i));
        if (g == 0.0) continue;
        accum[i] += g * g;
        param[i] -= learning_rate * g / (std::sqrt(accum[i]) + epsilon);
    }
}

// Squared-gradient accumulators mirroring an embedding table's blocks plus
// one row per slack variable. Accumulators only ever grow.
class OptimizerState {
public:
    OptimizerState() = default;
    OptimizerState(const EmbeddingTable& table, std::size_t num_slack,
                   double epsilon = 1e-8)
        : dim_(table.dim()),
          ent_re_(table.num_entities() * table.dim(), 0.0),
          ent_im_(table.num_entities() * table.dim(), 0.0),
          rel_re_(table.num_relations() * table.dim(), 0.0),
          rel_im_(table.num_relations() * table.dim(), 0.0),
          slack_(num_slack, 0.0), epsilon_(epsilon) {}

    std::span<double> entity_re(std::size_t i) { return row(ent_re_, i); }
    std::span<double> entity_im(std::size_t i) { return row(ent_im_, i); }
    std::span<double> relation_re(std::size_t i) { return row(rel_re_, i); }
    std::span<double> relation_im(std::size_t i) { return row(rel_im_, i); }
    double& slack(std::size_t i) { return slack_.at(i); }
    double epsilon() const { return epsilon_; }

    double total_accumulated() const {
        double acc = 0.0;
        for (const auto* block : {&ent_re_, &ent_im_, &rel_re_, &rel_im_, &slack_})
            for (double x : *block) acc += x;
        return acc;
    }

private:
    std::span<double> row(std::vector<double>& block, std::size_t i) {
        return std::span(block.data() + i * dim_, dim_);
    }

    std::size_t dim_ = 0;
    std::vector<double> ent_re_, ent_im_, rel_re_, rel_im_, slack_;
    double epsilon_ = 1e-8;
};

} // namespace transbound

#endif
