#ifndef TRANSBOUND_COMMANDS_HPP
#define TRANSBOUND_COMMANDS_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "transbound/embedding.hpp"
#include "transbound/errors.hpp"
#include "transbound/evaluation.hpp"
#include "transbound/json_io.hpp"
#include "transbound/lemma_lab.hpp"
#include "transbound/run_config.hpp"
#include "transbound/rules.hpp"
#include "transbound/training.hpp"
#include "transbound/triples.hpp"

namespace transbound {

// Exit-code contract: 0 success, 1 witness re-verification failure,
// 2 configuration/validation/parse problems, 3 numeric failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct CommandArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir;      // overrides output.dir when set
    std::optional<std::uint64_t> seed;
};

namespace detail {

template <typename Fn>
int run_guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

inline RunConfig build_run_config(const CommandArgs& args, bool require_data) {
    RunConfig cfg;
    if (!args.preset.empty()) apply_config_map(cfg, preset_config(args.preset));
    if (!args.config_path.empty()) apply_config_map(cfg, parse_config_file(args.config_path));
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    apply_seed_overrides(cfg, args.seed);
    cfg.validate(require_data);
    return cfg;
}

struct LoadedData {
    Vocabulary vocab;
    TripleStore store;
    RuleSet rules;
    std::vector<GroundedPattern> grounded;
    std::vector<RegBinding> regs;
};

inline LoadedData load_data(const RunConfig& cfg) {
    Vocabulary vocab;
    std::vector<Triple> train = load_triples(cfg.train_path, vocab, VocabPolicy::extend);
    std::vector<Triple> valid, test;
    if (!cfg.valid_path.empty())
        valid = load_triples(cfg.valid_path, vocab, VocabPolicy::frozen);
    if (!cfg.test_path.empty())
        test = load_triples(cfg.test_path, vocab, VocabPolicy::frozen);
    TripleStore store(std::move(train), std::move(valid), std::move(test),
                      vocab.num_entities(), vocab.num_relations());
    RuleSet rules;
    std::vector<GroundedPattern> grounded;
    std::vector<RegBinding> regs;
    if (cfg.uses_rules()) {
        rules = load_rules(cfg.rules_path, vocab, cfg.min_confidence);
        grounded = ground_rules(rules, store.train());
        for (const GroundedPattern& g : grounded) {
            double eta = 0.0;
            switch (g.rule.kind) {
                case RuleKind::symmetric: eta = cfg.eta_symmetric; break;
                case RuleKind::equivalence: eta = cfg.eta_equivalence; break;
                case RuleKind::implication: eta = cfg.eta_implication; break;
                case RuleKind::inverse: eta = cfg.eta_inverse; break;
                default: break;
            }
            if (eta > 0.0) regs.push_back({g.rule, eta});
        }
    }
    return LoadedData{std::move(vocab), std::move(store), std::move(rules),
                      std::move(grounded), std::move(regs)};
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + path.string());
    os << text;
}

} // namespace detail

// train: fit on the configured data, writing the best checkpoint, the JSON
// evaluation log and the fully-expanded effective config.
inline int cmd_train(const CommandArgs& args) {
    return detail::run_guarded([&]() {
        RunConfig cfg = detail::build_run_config(args, /*require_data=*/true);
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        detail::write_text(fs::path(cfg.out_dir) / "effective.cfg",
                           effective_config_text(cfg));
        detail::LoadedData data = detail::load_data(cfg);
        EmbeddingTable table = init_table(data.store.num_entities(),
                                          data.store.num_relations(), cfg.train.dim,
                                          cfg.table_mode(), cfg.train.seed);
        FitResult result = fit(table, data.store, cfg.train, data.regs);
        save_checkpoint(result.best_table, fs::path(cfg.out_dir) / "model.ckpt");
        {
            std::ofstream log(fs::path(cfg.out_dir) / "train_log.jsonl", std::ios::trunc);
            for (const EvalLogEntry& e : result.log) {
                json j = log_entry_to_json(e);
                log << j.dump() << "\n";
                std::cout << j.dump() << "\n";
            }
        }
        if (!data.store.test().empty()) {
            ScoreModel model(cfg.model_kind, cfg.norm, result.best_table);
            RankingReport rep = evaluate(model, data.store, data.store.test(),
                                         cfg.protocol, cfg.tie);
            detail::write_text(fs::path(cfg.out_dir) / "report.json",
                               report_to_json(rep, cfg.protocol).dump(2) + "\n");
            detail::write_text(fs::path(cfg.out_dir) / "report.txt",
                               report_to_text(std::string(to_string(cfg.model_kind)) +
                                              "-loss" + to_string(cfg.train.loss.condition),
                                              rep, cfg.protocol));
        }
        std::cout << "best epoch " << result.best_epoch << " valid MRR "
                  << result.best_mrr << "\n";
        return kExitOk;
    });
}

struct EvaluateArgs : CommandArgs {
    std::string checkpoint;
    std::optional<Protocol> protocol;
    std::string split = "test";  // test | valid
};

// evaluate: rank every query of the chosen split with a saved checkpoint.
inline int cmd_evaluate(const EvaluateArgs& args) {
    return detail::run_guarded([&]() {
        RunConfig cfg = detail::build_run_config(args, /*require_data=*/true);
        if (args.protocol) cfg.protocol = *args.protocol;
        detail::LoadedData data = detail::load_data(cfg);
        EmbeddingTable table = load_checkpoint(args.checkpoint);
        if (table.num_entities() != data.store.num_entities() ||
            table.num_relations() != data.store.num_relations())
            throw ConfigError("checkpoint vocabulary sizes do not match the data");
        if (table.mode() != cfg.table_mode())
            throw ConfigError("checkpoint mode does not match model.kind");
        if (table.dim() != cfg.train.dim)
            throw ConfigError("checkpoint dimension does not match model.dim");
        const std::vector<Triple>& split =
            args.split == "valid" ? data.store.valid() : data.store.test();
        if (split.empty())
            throw ConfigError("requested split '" + args.split + "' is empty");
        ScoreModel model(cfg.model_kind, cfg.norm, table);
        RankingReport rep = evaluate(model, data.store, split, cfg.protocol, cfg.tie);
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        detail::write_text(fs::path(cfg.out_dir) / "report.json",
                           report_to_json(rep, cfg.protocol).dump(2) + "\n");
        std::string label = std::string(to_string(cfg.model_kind)) + "-loss" +
                            to_string(cfg.train.loss.condition);
        detail::write_text(fs::path(cfg.out_dir) / "report.txt",
                           report_to_text(label, rep, cfg.protocol));
        double hits10 = rep.hits.count(10) ? rep.hits.at(10) : 0.0;
        std::cout << "MR " << rep.mr << " MRR " << rep.mrr << " Hits@10 " << hits10
                  << "\n";
        return kExitOk;
    });
}

// ground-rules: load triples and rules, ground the rules, dump the summary.
inline int cmd_ground_rules(const CommandArgs& args) {
    return detail::run_guarded([&]() {
        RunConfig cfg = detail::build_run_config(args, /*require_data=*/false);
        if (cfg.train_path.empty()) throw ConfigError("data.train is required");
        if (cfg.rules_path.empty()) throw ConfigError("data.rules is required");
        detail::LoadedData data = detail::load_data(cfg);
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        json j = grounding_to_json(data.grounded, data.rules, data.vocab);
        detail::write_text(fs::path(cfg.out_dir) / "grounding.json", j.dump(2) + "\n");
        std::ostringstream os;
        os << "rules kept: " << data.rules.rules.size()
           << ", dropped below confidence: " << data.rules.dropped_below_confidence << "\n";
        for (const GroundedPattern& g : data.grounded)
            os << to_string(g.rule.kind) << " (" << g.rule.confidence << "): "
               << g.instances.size() << " grounded instance(s)\n";
        detail::write_text(fs::path(cfg.out_dir) / "grounding.txt", os.str());
        std::cout << os.str();
        return kExitOk;
    });
}

struct LemmaCheckArgs {
    std::string lemmas = "all";      // comma list: L1,L3 or all
    std::string models = "all";      // transe,transcomplex or all
    std::string conditions = "all";  // a,b,c,d or all
    std::string mode = "constructive";
    std::string out_dir = "runs/lemma-check";
    LemmaTrainOptions train_options;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        out.push_back(s.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline std::vector<LemmaId> parse_lemmas(const std::string& s) {
    if (s == "all")
        return {LemmaId::L1, LemmaId::L2, LemmaId::L3, LemmaId::L4, LemmaId::L5, LemmaId::L6};
    std::vector<LemmaId> out;
    for (const std::string& item : split_list(s)) {
        if (item == "L1") out.push_back(LemmaId::L1);
        else if (item == "L2") out.push_back(LemmaId::L2);
        else if (item == "L3") out.push_back(LemmaId::L3);
        else if (item == "L4") out.push_back(LemmaId::L4);
        else if (item == "L5") out.push_back(LemmaId::L5);
        else if (item == "L6") out.push_back(LemmaId::L6);
        else throw ConfigError("unknown lemma '" + item + "'");
    }
    return out;
}

inline std::vector<ModelKind> parse_models(const std::string& s) {
    if (s == "all") return {ModelKind::transe, ModelKind::transcomplex};
    std::vector<ModelKind> out;
    for (const std::string& item : split_list(s)) {
        if (item == "transe") out.push_back(ModelKind::transe);
        else if (item == "transcomplex") out.push_back(ModelKind::transcomplex);
        else throw ConfigError("unknown model '" + item + "'");
    }
    return out;
}

inline std::vector<Condition> parse_conditions(const std::string& s) {
    if (s == "all") return {Condition::a, Condition::b, Condition::c, Condition::d};
    std::vector<Condition> out;
    for (const std::string& item : split_list(s)) {
        if (item == "a") out.push_back(Condition::a);
        else if (item == "b") out.push_back(Condition::b);
        else if (item == "c") out.push_back(Condition::c);
        else if (item == "d") out.push_back(Condition::d);
        else throw ConfigError("unknown condition '" + item + "'");
    }
    return out;
}

} // namespace detail

// lemma-check: run the verdict matrix over the requested cross product and
// re-verify every constructive witness from its stored embeddings.
inline int cmd_lemma_check(const LemmaCheckArgs& args) {
    return detail::run_guarded([&]() -> int {
        std::vector<LemmaId> lemmas = detail::parse_lemmas(args.lemmas);
        std::vector<ModelKind> models = detail::parse_models(args.models);
        std::vector<Condition> conditions = detail::parse_conditions(args.conditions);
        LemmaMode mode;
        if (args.mode == "constructive") mode = LemmaMode::constructive;
        else if (args.mode == "training") mode = LemmaMode::training;
        else throw ConfigError("mode must be constructive or training");

        std::vector<LemmaVerdict> verdicts;
        bool all_verified = true;
        for (LemmaId lemma : lemmas)
            for (ModelKind model : models)
                for (Condition condition : conditions) {
                    LemmaVerdict v = run_lemma_suite(lemma, model, condition, mode,
                                                     args.train_options);
                    if (mode == LemmaMode::constructive && !reverify(v))
                        all_verified = false;
                    verdicts.push_back(std::move(v));
                }

        namespace fs = std::filesystem;
        fs::create_directories(args.out_dir);
        json arr = json::array();
        for (const LemmaVerdict& v : verdicts) arr.push_back(verdict_to_json(v));
        detail::write_text(fs::path(args.out_dir) / "verdicts.json", arr.dump(2) + "\n");
        std::string table = verdict_matrix_to_text(verdicts);
        detail::write_text(fs::path(args.out_dir) / "verdicts.txt", table);
        std::cout << table;
        if (!all_verified) {
            std::cerr << "witness re-verification failed\n";
            return kExitVerification;
        }
        return kExitOk;
    });
}

// sweep: run the Cartesian grid given by the [sweep] section, rank finished
// runs by validation MRR (ties by lower MR) and keep going past failures.
inline int cmd_sweep(const CommandArgs& args) {
    return detail::run_guarded([&]() -> int {
        ConfigMap merged;
        if (!args.preset.empty()) {
            for (const auto& [k, v] : preset_config(args.preset)) merged[k] = v;
        }
        if (!args.config_path.empty()) {
            for (const auto& [k, v] : parse_config_file(args.config_path)) merged[k] = v;
        }
        ConfigMap base_map;
        std::vector<std::pair<std::string, std::vector<std::string>>> grid_axes;
        for (const auto& [key, value] : merged) {
            if (key.rfind("sweep.", 0) == 0)
                grid_axes.emplace_back(key.substr(6), detail::split_list(value));
            else
                base_map[key] = value;
        }
        if (grid_axes.empty()) throw ConfigError("sweep config has no [sweep] section");
        std::size_t total = 1;
        for (const auto& [_, values] : grid_axes) {
            if (values.empty()) throw ConfigError("empty sweep axis");
            total *= values.size();
        }

        struct SweepRow {
            std::size_t index = 0;
            ConfigMap overrides;
            bool ok = false;
            double mrr = 0.0, mr = 0.0;
            std::size_t best_epoch = 0;
            std::string error;
        };
        std::vector<SweepRow> rows;
        std::string sweep_out = args.out_dir.empty() ? "runs/sweep" : args.out_dir;
        namespace fs = std::filesystem;
        fs::create_directories(sweep_out);

        for (std::size_t i = 0; i < total; ++i) {
            SweepRow row;
            row.index = i;
            std::size_t rem = i;
            for (std::size_t ax = grid_axes.size(); ax-- > 0;) {
                const auto& [key, values] = grid_axes[ax];
                row.overrides[key] = values[rem % values.size()];
                rem /= values.size();
            }
            try {
                RunConfig cfg;
                apply_config_map(cfg, base_map);
                apply_config_map(cfg, row.overrides);
                cfg.out_dir = (fs::path(sweep_out) / ("run_" + std::to_string(i))).string();
                apply_seed_overrides(cfg, args.seed);
                cfg.validate(true);
                fs::create_directories(cfg.out_dir);
                detail::write_text(fs::path(cfg.out_dir) / "effective.cfg",
                                   effective_config_text(cfg));
                detail::LoadedData data = detail::load_data(cfg);
                EmbeddingTable table = init_table(data.store.num_entities(),
                                                  data.store.num_relations(), cfg.train.dim,
                                                  cfg.table_mode(), cfg.train.seed);
                FitResult result = fit(table, data.store, cfg.train, data.regs);
                save_checkpoint(result.best_table, fs::path(cfg.out_dir) / "model.ckpt");
                row.ok = true;
                row.mrr = result.best_mrr;
                row.best_epoch = result.best_epoch;
                for (const EvalLogEntry& e : result.log)
                    if (e.epoch == result.best_epoch) row.mr = e.mr;
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }

        std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
            if (a.ok != b.ok) return a.ok;
            if (a.mrr != b.mrr) return a.mrr > b.mrr;
            return a.mr < b.mr;
        });

        json leaderboard = json::array();
        std::ostringstream text;
        text << "rank  run    valid MRR   valid MR   overrides\n";
        std::size_t rank = 1, successes = 0;
        for (const SweepRow& row : rows) {
            json overrides = json::object();
            for (const auto& [k, v] : row.overrides) overrides[k] = v;
            leaderboard.push_back({{"run", row.index},
                                   {"ok", row.ok},
                                   {"mrr", row.mrr},
                                   {"mr", row.mr},
                                   {"best_epoch", row.best_epoch},
                                   {"overrides", overrides},
                                   {"error", row.error}});
            if (row.ok) {
                ++successes;
                text << std::setw(4) << rank++ << "  run_" << row.index << "  "
                     << std::fixed << std::setprecision(4) << row.mrr << "     "
                     << std::setprecision(1) << row.mr << "      ";
                for (const auto& [k, v] : row.overrides) text << k << "=" << v << " ";
                text << "\n";
            } else {
                text << "  --  run_" << row.index << "  failed: " << row.error << "\n";
            }
        }
        detail::write_text(fs::path(sweep_out) / "leaderboard.json",
                           leaderboard.dump(2) + "\n");
        detail::write_text(fs::path(sweep_out) / "leaderboard.txt", text.str());
        std::cout << text.str();
        return successes > 0 ? kExitOk : kExitConfig;
    });
}

} // namespace transbound

#endif
