#include <optional>
#include <string>

#include <CLI11.hpp>

#include "transbound/commands.hpp"

namespace tb = transbound;

int main(int argc, char** argv) {
    CLI::App app{"transbound: translation-based KG embeddings with bounded-score losses"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    std::optional<std::uint64_t> seed;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run config file");
        sub->add_option("--preset", preset, "named preset configuration");
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "seed override (TRANSBOUND_SEED wins over this)");
    };

    CLI::App* train = app.add_subcommand("train", "fit a model and keep the best checkpoint");
    add_common(train);

    CLI::App* evaluate = app.add_subcommand("evaluate", "rank a split with a checkpoint");
    add_common(evaluate);
    std::string checkpoint, protocol_s, split = "test";
    evaluate->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
    evaluate->add_option("--protocol", protocol_s, "filtered or raw")
        ->check(CLI::IsMember({"filtered", "raw"}));
    evaluate->add_option("--split", split, "test or valid")
        ->check(CLI::IsMember({"test", "valid"}));

    CLI::App* lemma = app.add_subcommand("lemma-check", "verdict matrix for the lemma lab");
    std::string lemmas = "all", models = "all", conditions = "all", mode = "constructive";
    std::string lemma_out = "runs/lemma-check";
    std::optional<std::uint64_t> lemma_seed;
    lemma->add_option("--lemmas", lemmas, "comma list (L1..L6) or all");
    lemma->add_option("--models", models, "comma list (transe,transcomplex) or all");
    lemma->add_option("--conditions", conditions, "comma list (a,b,c,d) or all");
    lemma->add_option("--mode", mode, "constructive or training");
    lemma->add_option("--out", lemma_out, "output directory");
    lemma->add_option("--seed", lemma_seed, "seed for the training-mode checks");

    CLI::App* ground = app.add_subcommand("ground-rules", "ground pattern rules over train");
    add_common(ground);

    CLI::App* sweep = app.add_subcommand("sweep", "grid search over a [sweep] section");
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);

    tb::CommandArgs common{config_path, preset, out_dir, seed};
    if (train->parsed()) return tb::cmd_train(common);
    if (evaluate->parsed()) {
        tb::EvaluateArgs args;
        static_cast<tb::CommandArgs&>(args) = common;
        args.checkpoint = checkpoint;
        args.split = split;
        if (protocol_s == "raw") args.protocol = tb::Protocol::raw;
        else if (protocol_s == "filtered") args.protocol = tb::Protocol::filtered;
        return tb::cmd_evaluate(args);
    }
    if (lemma->parsed()) {
        tb::LemmaCheckArgs args;
        args.lemmas = lemmas;
        args.models = models;
        args.conditions = conditions;
        args.mode = mode;
        args.out_dir = lemma_out;
        if (lemma_seed) args.train_options.seed = *lemma_seed;
        return tb::cmd_lemma_check(args);
    }
    if (ground->parsed()) return tb::cmd_ground_rules(common);
    if (sweep->parsed()) return tb::cmd_sweep(common);
    return tb::kExitConfig;
}
