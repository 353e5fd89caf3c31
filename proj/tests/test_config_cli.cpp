#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "transbound/commands.hpp"
#include "transbound/json_io.hpp"
#include "transbound/run_config.hpp"

using namespace transbound;
namespace fs = std::filesystem;

namespace {

fs::path sandbox() {
    fs::path p = fs::temp_directory_path() / "transbound_cli_tests";
    fs::create_directories(p);
    return p;
}

fs::path write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::trunc);
    os << content;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// Six entities, symmetric-ish toy graph; valid/test entities all seen in train.
fs::path toy_dataset() {
    fs::path dir = sandbox() / "toy";
    write_file(dir / "train.tsv",
               "e0\tr\te1\ne1\tr\te0\ne2\tr\te3\ne3\tr\te2\ne4\tr\te5\n"
               "e0\tq\te2\ne1\tq\te3\ne4\tq\te0\n");
    write_file(dir / "valid.tsv", "e5\tr\te4\ne2\tq\te4\n");
    write_file(dir / "test.tsv", "e0\tr\te3\n");
    write_file(dir / "patterns.rules.tsv",
               "symmetric\tr\t0.9\nimplication\tr\tq\t0.85\ninverse\tr\tq\t0.7\n");
    return dir;
}

std::string toy_config_text(const fs::path& dir, const std::string& extra = "") {
    std::ostringstream os;
    os << "[data]\n"
       << "train = " << (dir / "train.tsv").string() << "\n"
       << "valid = " << (dir / "valid.tsv").string() << "\n"
       << "[model]\nkind = transe\nnorm = l2\ndim = 4\n"
       << "[loss]\ncondition = c\ngamma1 = 1\ngamma2 = 2\n"
       << "[train]\nnegatives = 2\nlearning_rate = 0.1\nbatches_per_epoch = 2\n"
       << "max_epochs = 4\neval_every = 2\npatience = 2\nseed = 5\n"
       << extra;
    return os.str();
}

} // namespace

TEST_CASE("config parser handles sections, comments and errors") {
    ConfigMap m = parse_config_text("# top\n[model]\nkind = transe # inline\n\n"
                                    "[train]\nseed = 9\n", "test");
    CHECK(m.at("model.kind") == "transe");
    CHECK(m.at("train.seed") == "9");
    CHECK_THROWS_AS(parse_config_text("[model\nkind = x\n", "test"), ParseError);
    CHECK_THROWS_AS(parse_config_text("novalue\n", "test"), ParseError);

    RunConfig cfg;
    CHECK_THROWS_WITH_AS(apply_config_map(cfg, {{"model.kind", "banana"}}),
                         doctest::Contains("transe"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_map(cfg, {{"nope.key", "1"}}),
                         doctest::Contains("unknown config key"), ConfigError);
}

TEST_CASE("boundary constraint violations are named at validation time") {
    RunConfig cfg;
    cfg.train_path = "x";
    cfg.valid_path = "y";
    apply_config_map(cfg, {{"loss.condition", "c"},
                           {"loss.gamma1", "0.5"},
                           {"loss.gamma2", "0.4"}});
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("gamma2 > gamma1 > 0"),
                         ConfigError);
}

TEST_CASE("the tuned preset parses to the published configuration") {
    RunConfig cfg;
    apply_config_map(cfg, preset_config("fb15k-rp-lossB"));
    CHECK(cfg.model_kind == ModelKind::transcomplex);
    CHECK(cfg.train.dim == 200);
    CHECK(cfg.train.loss.condition == Condition::b);
    CHECK(cfg.train.loss.gamma1 == 0.4);
    CHECK(cfg.train.loss.gamma2 == 0.5);
    CHECK(cfg.train.loss.lambda0 == 100.0);
    CHECK(cfg.train.negatives_per_positive == 10);
    CHECK(cfg.eta_symmetric > 0.0);
    CHECK_THROWS_AS(preset_config("no-such-preset"), ConfigError);
}

TEST_CASE("effective config text round-trips every field") {
    RunConfig cfg;
    apply_config_map(cfg, preset_config("wn18rr-lossC"));
    cfg.train_path = "a.tsv";
    cfg.valid_path = "b.tsv";
    cfg.train.seed = 777;
    cfg.norm = Norm::L1;
    std::string text = effective_config_text(cfg);
    RunConfig back;
    apply_config_map(back, parse_config_text(text, "effective"));
    CHECK(effective_config_text(back) == text);
    CHECK(back.train.seed == 777);
    CHECK(back.norm == Norm::L1);
    CHECK(back.train.loss.gamma1 == cfg.train.loss.gamma1);
}

TEST_CASE("TRANSBOUND_SEED wins over the config file seed") {
    RunConfig cfg;
    cfg.train.seed = 1;
    apply_seed_overrides(cfg, std::optional<std::uint64_t>{2});
    CHECK(cfg.train.seed == 2);
    setenv("TRANSBOUND_SEED", "33", 1);
    apply_seed_overrides(cfg, std::optional<std::uint64_t>{2});
    CHECK(cfg.train.seed == 33);
    unsetenv("TRANSBOUND_SEED");
}

TEST_CASE("cmd_train writes checkpoint, log and effective config") {
    fs::path dir = toy_dataset();
    fs::path out = sandbox() / "train_out";
    fs::remove_all(out);
    fs::path cfg_file = write_file(sandbox() / "train.cfg",
                                   toy_config_text(dir, "[output]\ndir = " +
                                                            out.string() + "\n"));
    CommandArgs args;
    args.config_path = cfg_file.string();
    REQUIRE(cmd_train(args) == kExitOk);
    CHECK(fs::exists(out / "model.ckpt"));
    CHECK(fs::exists(out / "train_log.jsonl"));
    CHECK(fs::exists(out / "effective.cfg"));

    SUBCASE("re-running from the effective config reproduces the checkpoint") {
        fs::path out2 = sandbox() / "train_out2";
        fs::remove_all(out2);
        CommandArgs again;
        again.config_path = (out / "effective.cfg").string();
        again.out_dir = out2.string();
        REQUIRE(cmd_train(again) == kExitOk);
        CHECK(read_file(out2 / "model.ckpt") == read_file(out / "model.ckpt"));
    }
}

TEST_CASE("cmd_train rejects invalid loss bounds with exit code 2") {
    fs::path dir = toy_dataset();
    fs::path cfg_file = write_file(
        sandbox() / "bad.cfg",
        toy_config_text(dir) + "[loss]\ngamma1 = 2\ngamma2 = 1\n");
    CommandArgs args;
    args.config_path = cfg_file.string();
    CHECK(cmd_train(args) == kExitConfig);
}

TEST_CASE("cmd_evaluate reports perfect ranks on a perfect toy checkpoint") {
    fs::path dir = sandbox() / "perfect";
    write_file(dir / "train.tsv", "b\tr\ta\n");
    write_file(dir / "valid.tsv", "a\tr\ta\n");
    write_file(dir / "test.tsv", "a\tr\tb\n");
    // Vocabulary order: b = 0, a = 1. Place a at 0, b at 5, r = 5 so the
    // test triple (a, r, b) scores exactly zero.
    EmbeddingTable table(2, 1, 1, Mode::real);
    table.entity_re(0)[0] = 5.0;
    table.entity_re(1)[0] = 0.0;
    table.relation_re(0)[0] = 5.0;
    fs::path ckpt = dir / "model.ckpt";
    save_checkpoint(table, ckpt);

    std::string cfg_text = "[data]\ntrain = " + (dir / "train.tsv").string() +
                           "\nvalid = " + (dir / "valid.tsv").string() +
                           "\ntest = " + (dir / "test.tsv").string() +
                           "\n[model]\nkind = transe\ndim = 1\n" +
                           "[loss]\ncondition = c\ngamma1 = 1\ngamma2 = 2\n";
    fs::path cfg_file = write_file(dir / "eval.cfg", cfg_text);

    EvaluateArgs args;
    args.config_path = cfg_file.string();
    args.checkpoint = ckpt.string();
    args.out_dir = (dir / "out").string();
    REQUIRE(cmd_evaluate(args) == kExitOk);

    json rep = json::parse(read_file(dir / "out" / "report.json"));
    CHECK(rep["mr"] == 1.0);
    CHECK(rep["mrr"] == 1.0);
    CHECK(rep["hits"]["10"] == 1.0);

    SUBCASE("report aggregates re-derive from the per-triple ranks") {
        double mr = 0.0;
        for (const auto& r : rep["per_triple_ranks"]) mr += r["rank"].get<double>();
        mr /= rep["per_triple_ranks"].size();
        CHECK(mr == rep["mr"].get<double>());
    }

    SUBCASE("raw protocol never ranks better than filtered") {
        EvaluateArgs raw = args;
        raw.protocol = Protocol::raw;
        raw.out_dir = (dir / "out_raw").string();
        REQUIRE(cmd_evaluate(raw) == kExitOk);
        json raw_rep = json::parse(read_file(dir / "out_raw" / "report.json"));
        CHECK(raw_rep["protocol"] == "raw");
        for (std::size_t i = 0; i < rep["per_triple_ranks"].size(); ++i)
            CHECK(rep["per_triple_ranks"][i]["rank"].get<std::size_t>() <=
                  raw_rep["per_triple_ranks"][i]["rank"].get<std::size_t>());
    }

    SUBCASE("dimension and mode mismatches exit with code 2") {
        EvaluateArgs bad = args;
        EmbeddingTable wrong(2, 1, 3, Mode::real);
        fs::path wrong_ckpt = dir / "wrong.ckpt";
        save_checkpoint(wrong, wrong_ckpt);
        bad.checkpoint = wrong_ckpt.string();
        CHECK(cmd_evaluate(bad) == kExitConfig);
    }
}

TEST_CASE("cmd_ground_rules summarizes grounding through the CLI surface") {
    fs::path dir = toy_dataset();
    fs::path out = sandbox() / "ground_out";
    fs::remove_all(out);
    std::string cfg_text = "[data]\ntrain = " + (dir / "train.tsv").string() +
                           "\nrules = " + (dir / "patterns.rules.tsv").string() +
                           "\nmin_confidence = 0.8\n[output]\ndir = " + out.string() + "\n";
    CommandArgs args;
    args.config_path = write_file(sandbox() / "ground.cfg", cfg_text).string();
    REQUIRE(cmd_ground_rules(args) == kExitOk);
    json j = json::parse(read_file(out / "grounding.json"));
    CHECK(j["rules_kept"] == 2);                      // inverse at 0.7 dropped
    CHECK(j["rules_dropped_below_confidence"] == 1);
    CHECK(j["grounded"][0]["kind"] == "symmetric");
    CHECK(j["grounded"][0]["instance_count"] == 5);   // five r-triples in train
    CHECK(j["grounded"][1]["kind"] == "implication");
    CHECK(j["grounded"][1]["instance_count"] == 0);
}

TEST_CASE("cmd_lemma_check emits the full verdict matrix") {
    LemmaCheckArgs args;
    args.out_dir = (sandbox() / "lemma_out").string();
    REQUIRE(cmd_lemma_check(args) == kExitOk);
    json arr = json::parse(read_file(fs::path(args.out_dir) / "verdicts.json"));
    CHECK(arr.size() == 6 * 2 * 4);
    bool found = false;
    for (const auto& v : arr)
        if (v["lemma"] == "L3" && v["model"] == "transe" && v["condition"] == "a") {
            CHECK(v["outcome"] == "infeasible_certificate");
            found = true;
        }
    CHECK(found);

    LemmaCheckArgs bad = args;
    bad.conditions = "z";
    CHECK(cmd_lemma_check(bad) == kExitConfig);
}

TEST_CASE("cmd_sweep runs the grid and sorts the leaderboard") {
    fs::path dir = toy_dataset();
    fs::path out = sandbox() / "sweep_out";
    fs::remove_all(out);
    std::string cfg_text = toy_config_text(dir) +
                           "[sweep]\nloss.gamma1 = 0.5,1\ntrain.learning_rate = 0.05,0.1\n";
    CommandArgs args;
    args.config_path = write_file(sandbox() / "sweep.cfg", cfg_text).string();
    args.out_dir = out.string();
    REQUIRE(cmd_sweep(args) == kExitOk);
    json board = json::parse(read_file(out / "leaderboard.json"));
    REQUIRE(board.size() == 4);
    for (std::size_t i = 1; i < board.size(); ++i) {
        if (!board[i]["ok"].get<bool>()) continue;
        double prev = board[i - 1]["mrr"].get<double>();
        double cur = board[i]["mrr"].get<double>();
        CHECK(prev >= cur);
        if (prev == cur)
            CHECK(board[i - 1]["mr"].get<double>() <= board[i]["mr"].get<double>());
    }

    SUBCASE("a single-point grid reproduces cmd_train exactly") {
        fs::path single_out = sandbox() / "sweep_single";
        fs::remove_all(single_out);
        CommandArgs single;
        single.config_path =
            write_file(sandbox() / "sweep_single.cfg",
                       toy_config_text(dir) + "[sweep]\nloss.gamma1 = 1\n").string();
        single.out_dir = single_out.string();
        REQUIRE(cmd_sweep(single) == kExitOk);

        fs::path train_out = sandbox() / "sweep_ref";
        fs::remove_all(train_out);
        CommandArgs ref;
        ref.config_path =
            write_file(sandbox() / "sweep_ref.cfg",
                       toy_config_text(dir) + "[loss]\ngamma1 = 1\n[output]\ndir = " +
                           train_out.string() + "\n").string();
        REQUIRE(cmd_train(ref) == kExitOk);
        CHECK(read_file(single_out / "run_0" / "model.ckpt") ==
              read_file(train_out / "model.ckpt"));
    }
}

TEST_CASE("the published sweep preset enumerates 100 combinations") {
    ConfigMap preset = preset_config("sweep-gamma-lambda");
    std::size_t combos = 1;
    for (const auto& [key, value] : preset) {
        if (key.rfind("sweep.", 0) != 0) continue;
        std::size_t n = 1 + std::count(value.begin(), value.end(), ',');
        combos *= n;
    }
    CHECK(combos == 100);
}
