#ifndef TRANSBOUND_TRAINING_HPP
#define TRANSBOUND_TRAINING_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "transbound/embedding.hpp"
#include "transbound/errors.hpp"
#include "transbound/evaluation.hpp"
#include "transbound/losses.hpp"
#include "transbound/optimizer.hpp"
#include "transbound/rules.hpp"
#include "transbound/sampling.hpp"
#include "transbound/scoring.hpp"
#include "transbound/triples.hpp"

namespace transbound {

struct TrainConfig {
    std::size_t dim = 100;
    std::size_t negatives_per_positive = 1;
    double learning_rate = 0.01;
    std::size_t batches_per_epoch = 100;
    std::size_t max_epochs = 1000;
    std::size_t eval_every = 10;
    std::size_t patience = 5;
    std::uint64_t seed = 42;
    LossSpec loss;
    Norm norm = Norm::L2;
    bool filter_negatives = false;   // ablation: resample accidental positives
    bool project_entities = false;   // ablation: unit-L2 entity projection
    std::size_t threads = 1;
    double adagrad_epsilon = 1e-8;

    void validate() const {
        if (dim < 1) throw ConfigError("train.dim must be >= 1");
        if (negatives_per_positive < 1) throw ConfigError("train.negatives must be >= 1");
        if (batches_per_epoch < 1) throw ConfigError("train.batches_per_epoch must be >= 1");
        if (patience < 1) throw ConfigError("train.patience must be >= 1");
        if (eval_every < 1) throw ConfigError("train.eval_every must be >= 1");
        if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be > 0");
        if (threads < 1) throw ConfigError("train.threads must be >= 1");
        loss.validate();
    }
};

// A pattern rule bound to its objective weight.
struct RegBinding {
    PatternRule rule;
    double eta = 0.0;
};

struct EpochSummary {
    std::size_t epoch = 0;
    double mean_loss = 0.0;  // mean per-positive sample loss
    double reg_value = 0.0;  // eta-weighted regularizer total over the epoch
    double objective = 0.0;  // loss sum + reg total
    double grad_norm = 0.0;  // L2 norm of all accumulated gradients
    std::size_t samples = 0;
};

struct EvalLogEntry {
    std::size_t epoch = 0;
    double mean_loss = 0.0;
    double mr = 0.0;
    double mrr = 0.0;
    double hits10 = 0.0;
    std::int64_t wall_ms = 0;
};

struct FitResult {
    EmbeddingTable best_table;
    std::vector<EvalLogEntry> log;
    std::size_t best_epoch = 0;
    double best_mrr = 0.0;
};

// Eta-weighted regularizer value over a set of triples at fixed parameters:
// instance terms for symmetric/implication rules plus one relation-level
// term per equivalence/inverse rule.
inline double total_regularizer(const EmbeddingTable& table, const ScoreModel& model,
                                const std::vector<RegBinding>& regs,
                                const std::vector<Triple>& triples) {
    double acc = 0.0;
    for (const RegBinding& rb : regs) {
        switch (rb.rule.kind) {
            case RuleKind::symmetric:
                for (const Triple& t : triples)
                    if (t.relation == rb.rule.relations[0])
                        acc += rb.eta * reg_symmetric(t.head, t.tail, table, model.norm);
                break;
            case RuleKind::implication:
                for (const Triple& t : triples)
                    if (t.relation == rb.rule.relations[0])
                        acc += rb.eta * reg_implication(rb.rule.relations[0],
                                                        rb.rule.relations[1], t, model);
                break;
            case RuleKind::equivalence:
                acc += rb.eta * reg_equivalence(rb.rule.relations[0], rb.rule.relations[1],
                                                table, model.norm);
                break;
            case RuleKind::inverse:
                acc += rb.eta * reg_inverse(rb.rule.relations[0], rb.rule.relations[1],
                                            table, model.norm);
                break;
            case RuleKind::transitive:
            case RuleKind::composition:
                throw UnsupportedRuleError("transitive/composition rules cannot be trained");
        }
    }
    return acc;
}

// Mini-batch trainer. Each epoch shuffles the training triples with a
// stream derived from (seed, epoch), splits them into batches_per_epoch
// batches, accumulates loss and regularizer gradients per batch against the
// batch-start table, then applies one Adagrad update per touched row.
// Sample gradients may be computed by several threads; they are folded in
// fixed sample order, so the result is identical to single-threaded runs.
class Trainer {
public:
    Trainer(EmbeddingTable& table, const TripleStore& store, TrainConfig config,
            std::vector<RegBinding> regs = {})
        : table_(table), store_(store), config_(std::move(config)), regs_(std::move(regs)),
          optimizer_(table, store.train().size(), config_.adagrad_epsilon),
          slack_(store.train().size(), 0.0) {
        config_.validate();
        if (store_.train().empty()) throw ConfigError("training split is empty");
        if (table_.dim() != config_.dim)
            throw ConfigError("table dimension does not match train.dim");
        kind_ = table_.mode() == Mode::complex_ ? ModelKind::transcomplex : ModelKind::transe;
        for (const RegBinding& rb : regs_) {
            if (rb.eta < 0.0) throw ConfigError("regularizer weight must be non-negative");
            if (rb.rule.kind == RuleKind::transitive || rb.rule.kind == RuleKind::composition)
                throw UnsupportedRuleError("transitive/composition rules cannot be trained");
            if (rb.rule.kind == RuleKind::symmetric && table_.mode() != Mode::complex_)
                throw ConfigError("symmetric regularizer requires the complex model");
        }
    }

    const std::vector<double>& slack() const { return slack_; }
    const TrainConfig& config() const { return config_; }
    OptimizerState& optimizer() { return optimizer_; }

    EpochSummary run_epoch(std::size_t epoch_index) {
        const std::vector<Triple>& train = store_.train();
        std::vector<std::size_t> order(train.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng shuffle_rng = make_stream(config_.seed, 0x73687566ULL, epoch_index);
        fisher_yates_shuffle(order, shuffle_rng);
        Rng neg_rng = make_stream(config_.seed, 0x6e656773ULL, epoch_index);

        EpochSummary summary;
        summary.epoch = epoch_index;
        double loss_sum = 0.0;
        double grad_sq = 0.0;
        std::size_t nbatch = config_.batches_per_epoch;
        for (std::size_t b = 0; b < nbatch; ++b) {
            std::size_t lo = b * order.size() / nbatch;
            std::size_t hi = (b + 1) * order.size() / nbatch;
            if (lo == hi) continue;
            run_batch(epoch_index, b, {order.begin() + lo, order.begin() + hi},
                      neg_rng, summary, loss_sum, grad_sq);
        }
        summary.samples = train.size();
        summary.mean_loss = summary.samples ? loss_sum / static_cast<double>(summary.samples) : 0.0;
        summary.objective = loss_sum + summary.reg_value;
        summary.grad_norm = std::sqrt(grad_sq);
        table_.set_step(table_.step() + 1);
        return summary;
    }

private:
    struct RowGrad {
        bool is_entity = true;
        std::uint32_t index = 0;
        ComplexVector grad;
    };
    struct SampleGrad {
        double loss = 0.0;
        std::vector<RowGrad> rows;
        double slack_grad = 0.0;
        bool has_slack = false;
        std::size_t slack_index = 0;
    };
    struct BatchAccum {
        std::vector<std::pair<std::uint64_t, ComplexVector>> rows;
        std::unordered_map<std::uint64_t, std::size_t> slot;
        std::vector<std::pair<std::size_t, double>> slack;
        std::unordered_map<std::size_t, std::size_t> slack_slot;

        void add_row(bool is_entity, std::uint32_t index, double coef,
                     const ComplexVector& g, std::size_t dim) {
            if (coef == 0.0) return;
            std::uint64_t key = (static_cast<std::uint64_t>(is_entity ? 0 : 1) << 32) | index;
            auto [it, fresh] = slot.try_emplace(key, rows.size());
            if (fresh) rows.emplace_back(key, ComplexVector(dim));
            ComplexVector& dst = rows[it->second].second;
            for (std::size_t i = 0; i < dim; ++i) {
                dst.re[i] += coef * g.re[i];
                dst.im[i] += coef * g.im[i];
            }
        }
        void add_slack(std::size_t index, double g) {
            if (g == 0.0) return;
            auto [it, fresh] = slack_slot.try_emplace(index, slack.size());
            if (fresh) slack.emplace_back(index, 0.0);
            slack[it->second].second += g;
        }
    };

    SampleGrad compute_sample(const ScoreModel& model, std::size_t train_index,
                              const std::vector<NegativeSample>& negs) const {
        const Triple& pos = store_.train()[train_index];
        SampleGrad out;
        double f_pos = score(model, pos);
        if (!std::isfinite(f_pos))
            throw NumericError("non-finite score on triple (" + std::to_string(pos.head) +
                               ", " + std::to_string(pos.relation) + ", " +
                               std::to_string(pos.tail) + ")");
        std::vector<double> f_negs(negs.size());
        for (std::size_t j = 0; j < negs.size(); ++j) {
            f_negs[j] = score(model, negs[j].corrupted);
            if (!std::isfinite(f_negs[j]))
                throw NumericError("non-finite score on a corrupted triple");
        }
        std::optional<double> xi;
        if (config_.loss.use_slack) xi = slack_[train_index];
        LossDerivatives ld = loss_derivatives(config_.loss, f_pos, f_negs, xi);
        out.loss = ld.value;
        if (config_.loss.use_slack) {
            out.has_slack = true;
            out.slack_index = train_index;
            out.slack_grad = ld.d_slack;
        }
        auto push_triple = [&](const Triple& t, double coef) {
            if (coef == 0.0) return;
            ScoreGradients sg = score_gradients(model, t);
            out.rows.push_back({true, t.head, scale(sg.head, coef)});
            out.rows.push_back({false, t.relation, scale(sg.rel, coef)});
            out.rows.push_back({true, t.tail, scale(sg.tail, coef)});
        };
        push_triple(pos, ld.d_pos);
        for (std::size_t j = 0; j < negs.size(); ++j)
            push_triple(negs[j].corrupted, ld.d_neg[j]);
        return out;
    }

    void add_batch_regularizers(const ScoreModel& model,
                                const std::vector<std::size_t>& batch,
                                BatchAccum& accum, EpochSummary& summary) const {
        std::size_t d = table_.dim();
        for (const RegBinding& rb : regs_) {
            switch (rb.rule.kind) {
                case RuleKind::symmetric: {
                    RelationId r = rb.rule.relations[0];
                    for (std::size_t idx : batch) {
                        const Triple& t = store_.train()[idx];
                        if (t.relation != r) continue;
                        summary.reg_value += rb.eta * reg_symmetric(t.head, t.tail, table_, model.norm);
                        ComplexVector g(d);
                        g.re = reg_symmetric_grad_re(t.head, t.tail, table_, model.norm);
                        accum.add_row(true, t.head, rb.eta, g, d);
                        accum.add_row(true, t.tail, -rb.eta, g, d);
                    }
                    break;
                }
                case RuleKind::implication: {
                    RelationId p = rb.rule.relations[0], q = rb.rule.relations[1];
                    for (std::size_t idx : batch) {
                        const Triple& t = store_.train()[idx];
                        if (t.relation != p) continue;
                        double value = reg_implication(p, q, t, model);
                        summary.reg_value += rb.eta * value;
                        if (value <= 0.0) continue;
                        Triple premise = t;
                        Triple conclusion = t;
                        conclusion.relation = q;
                        ScoreGradients gp = score_gradients(model, premise);
                        ScoreGradients gq = score_gradients(model, conclusion);
                        accum.add_row(true, t.head, rb.eta, gp.head, d);
                        accum.add_row(true, t.tail, rb.eta, gp.tail, d);
                        accum.add_row(false, p, rb.eta, gp.rel, d);
                        accum.add_row(true, t.head, -rb.eta, gq.head, d);
                        accum.add_row(true, t.tail, -rb.eta, gq.tail, d);
                        accum.add_row(false, q, -rb.eta, gq.rel, d);
                    }
                    break;
                }
                case RuleKind::equivalence:
                case RuleKind::inverse: {
                    RelationId p = rb.rule.relations[0], q = rb.rule.relations[1];
                    summary.reg_value +=
                        rb.eta * reg_equivalence(p, q, table_, model.norm);
                    ComplexVector g = reg_relation_diff_grad(p, q, table_, model.norm);
                    accum.add_row(false, p, rb.eta, g, d);
                    accum.add_row(false, q, -rb.eta, g, d);
                    break;
                }
                case RuleKind::transitive:
                case RuleKind::composition:
                    throw UnsupportedRuleError("transitive/composition rules cannot be trained");
            }
        }
    }

    void run_batch(std::size_t epoch_index, std::size_t batch_index,
                   std::vector<std::size_t> batch, Rng& neg_rng,
                   EpochSummary& summary, double& loss_sum, double& grad_sq) {
        ScoreModel model(kind_, config_.norm, table_);
        std::vector<std::vector<NegativeSample>> negs(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i)
            negs[i] = sample_negatives(store_.train()[batch[i]], store_,
                                       config_.negatives_per_positive, neg_rng,
                                       config_.filter_negatives);

        try {
            std::vector<SampleGrad> grads(batch.size());
            if (config_.threads <= 1 || batch.size() < 2 * config_.threads) {
                for (std::size_t i = 0; i < batch.size(); ++i)
                    grads[i] = compute_sample(model, batch[i], negs[i]);
            } else {
                std::size_t nt = config_.threads;
                std::vector<std::exception_ptr> worker_errors(nt);
                auto worker = [&](std::size_t k, std::size_t lo, std::size_t hi) {
                    try {
                        for (std::size_t i = lo; i < hi; ++i)
                            grads[i] = compute_sample(model, batch[i], negs[i]);
                    } catch (...) {
                        worker_errors[k] = std::current_exception();
                    }
                };
                std::vector<std::thread> pool;
                for (std::size_t k = 0; k < nt; ++k)
                    pool.emplace_back(worker, k, k * batch.size() / nt,
                                      (k + 1) * batch.size() / nt);
                for (auto& th : pool) th.join();
                for (const std::exception_ptr& ep : worker_errors)
                    if (ep) std::rethrow_exception(ep);
            }

            BatchAccum accum;
            std::size_t d = table_.dim();
            for (const SampleGrad& sg : grads) {
                loss_sum += sg.loss;
                for (const RowGrad& rg : sg.rows)
                    accum.add_row(rg.is_entity, rg.index, 1.0, rg.grad, d);
                if (sg.has_slack) accum.add_slack(sg.slack_index, sg.slack_grad);
            }
            add_batch_regularizers(model, batch, accum, summary);

            for (auto& [key, grad] : accum.rows) {
                bool is_entity = (key >> 32) == 0;
                std::uint32_t index = static_cast<std::uint32_t>(key & 0xffffffffULL);
                for (double x : grad.re) grad_sq += x * x;
                for (double x : grad.im) grad_sq += x * x;
                if (is_entity) {
                    adagrad_step(table_.entity_re(index), grad.re,
                                 optimizer_.entity_re(index), config_.learning_rate,
                                 optimizer_.epsilon());
                    adagrad_step(table_.entity_im(index), grad.im,
                                 optimizer_.entity_im(index), config_.learning_rate,
                                 optimizer_.epsilon());
                } else {
                    adagrad_step(table_.relation_re(index), grad.re,
                                 optimizer_.relation_re(index), config_.learning_rate,
                                 optimizer_.epsilon());
                    adagrad_step(table_.relation_im(index), grad.im,
                                 optimizer_.relation_im(index), config_.learning_rate,
                                 optimizer_.epsilon());
                }
            }
            for (auto& [idx, g] : accum.slack) {
                grad_sq += g * g;
                double xi = slack_[idx];
                std::span<double> param(&xi, 1);
                std::span<const double> grad(&g, 1);
                double* gcell = &optimizer_.slack(idx);
                adagrad_step(param, grad, std::span<double>(gcell, 1),
                             config_.learning_rate, optimizer_.epsilon());
                slack_[idx] = xi < 0.0 ? 0.0 : xi;  // project onto xi >= 0
            }
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " [epoch " +
                               std::to_string(epoch_index) + ", batch " +
                               std::to_string(batch_index) + "]");
        }
        if (config_.project_entities) table_.project_entities_unit_l2();
    }

    EmbeddingTable& table_;
    const TripleStore& store_;
    TrainConfig config_;
    std::vector<RegBinding> regs_;
    OptimizerState optimizer_;
    std::vector<double> slack_;
    ModelKind kind_ = ModelKind::transe;
};

// Runs up to max_epochs epochs, computing filtered validation MRR every
// eval_every epochs. Keeps the best checkpoint by MRR and stops after
// `patience` consecutive evaluations without improvement.
inline FitResult fit(EmbeddingTable& table, const TripleStore& store,
                     const TrainConfig& config, std::vector<RegBinding> regs = {}) {
    config.validate();
    FitResult result;
    result.best_table = table;
    if (config.max_epochs == 0) return result;
    if (store.valid().empty())
        throw ConfigError("fit requires a non-empty validation split");
    Trainer trainer(table, store, config, std::move(regs));
    std::size_t bad_evals = 0;
    bool have_best = false;
    auto t0 = std::chrono::steady_clock::now();
    for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
        EpochSummary summary = trainer.run_epoch(epoch);
        if (epoch % config.eval_every != 0) continue;
        ModelKind kind = table.mode() == Mode::complex_ ? ModelKind::transcomplex
                                                        : ModelKind::transe;
        ScoreModel model(kind, config.norm, table);
        RankingReport rep = evaluate(model, store, store.valid(), Protocol::filtered);
        auto now = std::chrono::steady_clock::now();
        EvalLogEntry entry;
        entry.epoch = epoch;
        entry.mean_loss = summary.mean_loss;
        entry.mr = rep.mr;
        entry.mrr = rep.mrr;
        entry.hits10 = rep.hits.count(10) ? rep.hits.at(10) : 0.0;
        entry.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - t0).count();
        result.log.push_back(entry);
        if (!have_best || rep.mrr > result.best_mrr) {
            have_best = true;
            result.best_mrr = rep.mrr;
            result.best_epoch = epoch;
            result.best_table = table;
            bad_evals = 0;
        } else if (++bad_evals >= config.patience) {
            break;
        }
    }
    return result;
}

} // namespace transbound

#endif
