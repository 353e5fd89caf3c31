#ifndef TRANSBOUND_LOSSES_HPP
#define TRANSBOUND_LOSSES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "transbound/complex.hpp"
#include "transbound/errors.hpp"
#include "transbound/scoring.hpp"

namespace transbound {

// The four score-boundary regimes a loss can enforce. A triple counts as
// positive when its residual hits a point (a), the surface of a sphere of
// radius gamma1 (b), the inside of that sphere (c), or a per-triple sphere
// set implicitly by the ranking margin (d).
enum class Condition { a, b, c, d };

inline const char* to_string(Condition c) {
    switch (c) {
        case Condition::a: return "a";
        case Condition::b: return "b";
        case Condition::c: return "c";
        case Condition::d: return "d";
    }
    return "?";
}

struct LossSpec {
    Condition condition = Condition::c;
    double gamma1 = 1.0;       // positive-score bound (conditions a-c)
    double gamma2 = 2.0;       // negative-score bound (conditions a-c)
    double lambda0 = 0.0;      // slack weight
    double lambda1 = 1.0;      // positive-term weight
    double lambda2 = 1.0;      // negative-term weight
    double margin = 1.0;       // ranking margin (condition d)
    bool use_slack = false;

    void validate() const {
        if (lambda0 < 0 || lambda1 < 0 || lambda2 < 0)
            throw ConfigError("loss weights must be non-negative");
        switch (condition) {
            case Condition::a:
                if (gamma1 != 0.0)
                    throw ConfigError("condition a fixes gamma1 = 0");
                if (gamma2 <= 0.0)
                    throw ConfigError("condition a requires gamma2 > 0");
                break;
            case Condition::b:
            case Condition::c:
                if (!(gamma2 > gamma1 && gamma1 > 0.0))
                    throw ConfigError(std::string("condition ") + to_string(condition) +
                                      " requires gamma2 > gamma1 > 0");
                break;
            case Condition::d:
                if (margin <= 0.0)
                    throw ConfigError("condition d requires margin > 0");
                break;
        }
        if (use_slack && condition != Condition::c)
            throw ConfigError("slack variables are wired into the condition-c loss only");
    }
};

namespace detail {
inline void check_scores(double f_pos, double f_neg) {
    if (f_pos < 0.0 || f_neg < 0.0)
        throw ContractError("scores must be non-negative");
}
inline double hinge(double x) { return x > 0.0 ? x : 0.0; }
} // namespace detail

// Sphere-surface loss (condition b; condition a is the gamma1 = 0 case):
// lambda1*|f_pos - gamma1| + lambda2*max(gamma2 - f_neg, 0).
inline double loss_ab(double f_pos, double f_neg, const LossSpec& spec) {
    if (spec.condition != Condition::a && spec.condition != Condition::b)
        throw ContractError("loss_ab expects condition a or b");
    detail::check_scores(f_pos, f_neg);
    return spec.lambda1 * std::fabs(f_pos - spec.gamma1) +
           spec.lambda2 * detail::hinge(spec.gamma2 - f_neg);
}

// Ball loss (condition c), optionally with a per-positive slack variable
// that softens the negative bound at quadratic cost:
// lambda0*xi^2 + lambda1*max(f_pos - gamma1, 0)
//              + lambda2*max(gamma2 - f_neg - xi, 0).
inline double loss_c(double f_pos, double f_neg, const LossSpec& spec,
                     std::optional<double> xi = std::nullopt) {
    if (spec.condition != Condition::c)
        throw ContractError("loss_c expects condition c");
    detail::check_scores(f_pos, f_neg);
    if (!spec.use_slack)
        return spec.lambda1 * detail::hinge(f_pos - spec.gamma1) +
               spec.lambda2 * detail::hinge(spec.gamma2 - f_neg);
    if (!xi) throw ContractError("slack value required when use_slack is set");
    if (*xi < 0.0) throw ContractError("slack must be non-negative");
    return spec.lambda0 * (*xi) * (*xi) +
           spec.lambda1 * detail::hinge(f_pos - spec.gamma1) +
           spec.lambda2 * detail::hinge(spec.gamma2 - f_neg - *xi);
}

// Margin ranking loss (condition d): max(f_pos + margin - f_neg, 0).
inline double loss_margin(double f_pos, double f_neg, const LossSpec& spec) {
    if (spec.condition != Condition::d)
        throw ContractError("loss_margin expects condition d");
    detail::check_scores(f_pos, f_neg);
    return detail::hinge(f_pos + spec.margin - f_neg);
}

// Closed-form minimizer of the slack part of the condition-c loss at fixed
// scores: clamp(lambda2 / (2*lambda0), 0, max(gamma2 - f_neg, 0)).
inline double optimal_slack(double f_neg, const LossSpec& spec) {
    double violation = spec.gamma2 - f_neg;
    if (violation <= 0.0 || spec.lambda0 <= 0.0) return 0.0;
    return std::min(spec.lambda2 / (2.0 * spec.lambda0), violation);
}

// --- Relation-pattern regularizers -----------------------------------------

// Symmetric: ||Re(h) - Re(t)||. Reads real parts only, so it is invariant
// under any change to imaginary coordinates; defined for the complex model.
inline double reg_symmetric(EntityId h, EntityId t, const EmbeddingTable& table,
                            Norm p = Norm::L2) {
    if (table.mode() != Mode::complex_)
        throw UnsupportedRuleError("symmetric regularizer is defined on the complex model");
    auto h_re = table.entity_re(h), t_re = table.entity_re(t);
    double acc = 0.0;
    if (p == Norm::L2) {
        for (std::size_t i = 0; i < h_re.size(); ++i) {
            double d = h_re[i] - t_re[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    for (std::size_t i = 0; i < h_re.size(); ++i) acc += std::fabs(h_re[i] - t_re[i]);
    return acc;
}

// Equivalence: ||p - q|| over concatenated real and imaginary parts.
inline double reg_equivalence(RelationId p, RelationId q, const EmbeddingTable& table,
                              Norm n = Norm::L2) {
    return norm(sub(table.relation(p), table.relation(q)), n);
}

// Implication p -> q on a triple's (h, t): max(f_p(h,t) - f_q(h,t), 0).
inline double reg_implication(RelationId p, RelationId q, const Triple& triple,
                              const ScoreModel& model) {
    Triple premise = triple;
    premise.relation = p;
    Triple conclusion = triple;
    conclusion.relation = q;
    return detail::hinge(score(model, premise) - score(model, conclusion));
}

// Inverse: ||r - r_inv||, same shape as the equivalence term.
inline double reg_inverse(RelationId r, RelationId r_inv, const EmbeddingTable& table,
                          Norm n = Norm::L2) {
    return norm(sub(table.relation(r), table.relation(r_inv)), n);
}

// Combined objective: sum of batch losses plus weighted regularizer values.
inline double objective(const std::vector<double>& losses,
                        const std::vector<std::pair<double, double>>& weighted_regs) {
    double acc = 0.0;
    for (double l : losses) acc += l;
    for (const auto& [eta, value] : weighted_regs) acc += eta * value;
    return acc;
}

// --- Regularizer gradients (consumed by the trainer) ------------------------

// d reg_symmetric / d Re(h); the Re(t) gradient is its negation and all
// imaginary derivatives vanish.
inline std::vector<double> reg_symmetric_grad_re(EntityId h, EntityId t,
                                                 const EmbeddingTable& table, Norm p) {
    auto h_re = table.entity_re(h);
    auto t_re = table.entity_re(t);
    std::size_t d = h_re.size();
    std::vector<double> g(d, 0.0);
    if (p == Norm::L2) {
        double sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double diff = h_re[i] - t_re[i];
            sq += diff * diff;
        }
        double n = std::sqrt(sq);
        if (n == 0.0) return g;
        for (std::size_t i = 0; i < d; ++i) g[i] = (h_re[i] - t_re[i]) / n;
        return g;
    }
    for (std::size_t i = 0; i < d; ++i) g[i] = sign0(h_re[i] - t_re[i]);
    return g;
}

// d ||p - q|| / d p over both parts; the q gradient is its negation. Shared
// by the equivalence and inverse terms.
inline ComplexVector reg_relation_diff_grad(RelationId p, RelationId q,
                                            const EmbeddingTable& table, Norm n) {
    ComplexVector diff = sub(table.relation(p), table.relation(q));
    double value = norm(diff, n);
    ComplexVector g(diff.dim());
    if (value == 0.0) return g;
    if (n == Norm::L2) return scale(diff, 1.0 / value);
    for (std::size_t i = 0; i < diff.dim(); ++i) {
        g.re[i] = sign0(diff.re[i]);
        g.im[i] = sign0(diff.im[i]);
    }
    return g;
}

// --- Per-sample loss with score derivatives (used by the trainer) ----------

// Derivative coefficients of the sample loss with respect to the positive
// score, each negative score, and the slack variable. Negative-term hinges
// are averaged over the negatives so the loss scale does not change with
// the negatives-per-positive count. Hinge and |.| kinks use subgradient 0.
struct LossDerivatives {
    double value = 0.0;
    double d_pos = 0.0;
    std::vector<double> d_neg;
    double d_slack = 0.0;
};

inline LossDerivatives loss_derivatives(const LossSpec& spec, double f_pos,
                                        const std::vector<double>& f_negs,
                                        std::optional<double> xi = std::nullopt) {
    LossDerivatives out;
    out.d_neg.assign(f_negs.size(), 0.0);
    double inv_n = f_negs.empty() ? 0.0 : 1.0 / static_cast<double>(f_negs.size());
    switch (spec.condition) {
        case Condition::a:
        case Condition::b: {
            double diff = f_pos - spec.gamma1;
            out.value += spec.lambda1 * std::fabs(diff);
            out.d_pos = spec.lambda1 * sign0(diff);
            for (std::size_t j = 0; j < f_negs.size(); ++j) {
                double gap = spec.gamma2 - f_negs[j];
                out.value += inv_n * spec.lambda2 * detail::hinge(gap);
                if (gap > 0.0) out.d_neg[j] = -inv_n * spec.lambda2;
            }
            break;
        }
        case Condition::c: {
            double over = f_pos - spec.gamma1;
            out.value += spec.lambda1 * detail::hinge(over);
            if (over > 0.0) out.d_pos = spec.lambda1;
            double x = 0.0;
            if (spec.use_slack) {
                if (!xi) throw ContractError("slack value required when use_slack is set");
                x = *xi;
                out.value += spec.lambda0 * x * x;
                out.d_slack = 2.0 * spec.lambda0 * x;
            }
            for (std::size_t j = 0; j < f_negs.size(); ++j) {
                double gap = spec.gamma2 - f_negs[j] - x;
                out.value += inv_n * spec.lambda2 * detail::hinge(gap);
                if (gap > 0.0) {
                    out.d_neg[j] = -inv_n * spec.lambda2;
                    if (spec.use_slack) out.d_slack -= inv_n * spec.lambda2;
                }
            }
            break;
        }
        case Condition::d: {
            for (std::size_t j = 0; j < f_negs.size(); ++j) {
                double gap = f_pos + spec.margin - f_negs[j];
                out.value += inv_n * detail::hinge(gap);
                if (gap > 0.0) {
                    out.d_pos += inv_n;
                    out.d_neg[j] = -inv_n;
                }
            }
            break;
        }
    }
    return out;
}

} // namespace transbound

#endif
