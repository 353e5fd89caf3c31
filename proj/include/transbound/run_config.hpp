#ifndef TRANSBOUND_RUN_CONFIG_HPP
#define TRANSBOUND_RUN_CONFIG_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "transbound/errors.hpp"
#include "transbound/evaluation.hpp"
#include "transbound/losses.hpp"
#include "transbound/scoring.hpp"
#include "transbound/training.hpp"

namespace transbound {

// Flat section.key -> value view of a config file. Lines are `key = value`
// under `[section]` headers; '#' starts a comment.
using ConfigMap = std::map<std::string, std::string>;

inline ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
    ConfigMap out;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header in " + origin, lineno);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value in " + origin, lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("empty key in " + origin, lineno);
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

inline ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

// Everything one command run needs; defaults are echoed into the persisted
// effective config so runs are self-describing and replayable.
struct RunConfig {
    // [data]
    std::string train_path, valid_path, test_path, rules_path;
    double min_confidence = 0.8;
    // [model]
    ModelKind model_kind = ModelKind::transcomplex;
    Norm norm = Norm::L2;
    // [loss] + [train]
    TrainConfig train;
    // [regs] eta by rule kind
    double eta_symmetric = 0.0;
    double eta_equivalence = 0.0;
    double eta_implication = 0.0;
    double eta_inverse = 0.0;
    // [output]
    std::string out_dir = "runs/out";
    Protocol protocol = Protocol::filtered;
    TieMode tie = TieMode::mid;

    Mode table_mode() const {
        return model_kind == ModelKind::transcomplex ? Mode::complex_ : Mode::real;
    }

    bool uses_rules() const { return !rules_path.empty(); }

    void validate(bool require_data = true) const;
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + value + "'");
}

} // namespace detail

inline void apply_config_map(RunConfig& cfg, const ConfigMap& map) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_u64;
    for (const auto& [key, value] : map) {
        if (key == "data.train") cfg.train_path = value;
        else if (key == "data.valid") cfg.valid_path = value;
        else if (key == "data.test") cfg.test_path = value;
        else if (key == "data.rules") cfg.rules_path = value;
        else if (key == "data.min_confidence") cfg.min_confidence = parse_double(key, value);
        else if (key == "model.kind") {
            if (value == "transe") cfg.model_kind = ModelKind::transe;
            else if (value == "transcomplex") cfg.model_kind = ModelKind::transcomplex;
            else throw ConfigError("model.kind must be transe or transcomplex");
        } else if (key == "model.norm") {
            if (value == "l1") cfg.norm = Norm::L1;
            else if (value == "l2") cfg.norm = Norm::L2;
            else throw ConfigError("model.norm must be l1 or l2");
        } else if (key == "model.dim") cfg.train.dim = parse_u64(key, value);
        else if (key == "loss.condition") {
            if (value == "a") cfg.train.loss.condition = Condition::a;
            else if (value == "b") cfg.train.loss.condition = Condition::b;
            else if (value == "c") cfg.train.loss.condition = Condition::c;
            else if (value == "d") cfg.train.loss.condition = Condition::d;
            else throw ConfigError("loss.condition must be one of a, b, c, d");
        }
        else if (key == "loss.gamma1") cfg.train.loss.gamma1 = parse_double(key, value);
        else if (key == "loss.gamma2") cfg.train.loss.gamma2 = parse_double(key, value);
        else if (key == "loss.lambda0") cfg.train.loss.lambda0 = parse_double(key, value);
        else if (key == "loss.lambda1") cfg.train.loss.lambda1 = parse_double(key, value);
        else if (key == "loss.lambda2") cfg.train.loss.lambda2 = parse_double(key, value);
        else if (key == "loss.margin") cfg.train.loss.margin = parse_double(key, value);
        else if (key == "loss.use_slack") cfg.train.loss.use_slack = parse_bool(key, value);
        else if (key == "train.negatives") cfg.train.negatives_per_positive = parse_u64(key, value);
        else if (key == "train.learning_rate") cfg.train.learning_rate = parse_double(key, value);
        else if (key == "train.batches_per_epoch") cfg.train.batches_per_epoch = parse_u64(key, value);
        else if (key == "train.max_epochs") cfg.train.max_epochs = parse_u64(key, value);
        else if (key == "train.eval_every") cfg.train.eval_every = parse_u64(key, value);
        else if (key == "train.patience") cfg.train.patience = parse_u64(key, value);
        else if (key == "train.seed") cfg.train.seed = parse_u64(key, value);
        else if (key == "train.threads") cfg.train.threads = parse_u64(key, value);
        else if (key == "train.filter_negatives") cfg.train.filter_negatives = parse_bool(key, value);
        else if (key == "train.project_entities") cfg.train.project_entities = parse_bool(key, value);
        else if (key == "regs.symmetric") cfg.eta_symmetric = parse_double(key, value);
        else if (key == "regs.equivalence") cfg.eta_equivalence = parse_double(key, value);
        else if (key == "regs.implication") cfg.eta_implication = parse_double(key, value);
        else if (key == "regs.inverse") cfg.eta_inverse = parse_double(key, value);
        else if (key == "output.dir") cfg.out_dir = value;
        else if (key == "output.protocol") {
            if (value == "filtered") cfg.protocol = Protocol::filtered;
            else if (value == "raw") cfg.protocol = Protocol::raw;
            else throw ConfigError("output.protocol must be filtered or raw");
        } else if (key == "output.tie") {
            if (value == "mid") cfg.tie = TieMode::mid;
            else if (value == "optimistic") cfg.tie = TieMode::optimistic;
            else if (value == "pessimistic") cfg.tie = TieMode::pessimistic;
            else throw ConfigError("output.tie must be mid, optimistic or pessimistic");
        }
        else throw ConfigError("unknown config key: " + key);
    }
}

inline void RunConfig::validate(bool require_data) const {
    if (require_data) {
        if (train_path.empty()) throw ConfigError("data.train is required");
        if (valid_path.empty()) throw ConfigError("data.valid is required");
    }
    if (min_confidence < 0.0 || min_confidence > 1.0)
        throw ConfigError("data.min_confidence must lie in [0, 1]");
    train.validate();
    if (model_kind == ModelKind::transe && eta_symmetric > 0.0)
        throw ConfigError("the symmetric regularizer requires model.kind = transcomplex");
}

// Serializes every field, defaulted or not, in a fixed order.
inline std::string effective_config_text(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[data]\n";
    os << "train = " << cfg.train_path << "\n";
    os << "valid = " << cfg.valid_path << "\n";
    os << "test = " << cfg.test_path << "\n";
    os << "rules = " << cfg.rules_path << "\n";
    os << "min_confidence = " << cfg.min_confidence << "\n\n";
    os << "[model]\n";
    os << "kind = " << to_string(cfg.model_kind) << "\n";
    os << "norm = " << (cfg.norm == Norm::L1 ? "l1" : "l2") << "\n";
    os << "dim = " << cfg.train.dim << "\n\n";
    os << "[loss]\n";
    os << "condition = " << to_string(cfg.train.loss.condition) << "\n";
    os << "gamma1 = " << cfg.train.loss.gamma1 << "\n";
    os << "gamma2 = " << cfg.train.loss.gamma2 << "\n";
    os << "lambda0 = " << cfg.train.loss.lambda0 << "\n";
    os << "lambda1 = " << cfg.train.loss.lambda1 << "\n";
    os << "lambda2 = " << cfg.train.loss.lambda2 << "\n";
    os << "margin = " << cfg.train.loss.margin << "\n";
    os << "use_slack = " << (cfg.train.loss.use_slack ? "true" : "false") << "\n\n";
    os << "[train]\n";
    os << "negatives = " << cfg.train.negatives_per_positive << "\n";
    os << "learning_rate = " << cfg.train.learning_rate << "\n";
    os << "batches_per_epoch = " << cfg.train.batches_per_epoch << "\n";
    os << "max_epochs = " << cfg.train.max_epochs << "\n";
    os << "eval_every = " << cfg.train.eval_every << "\n";
    os << "patience = " << cfg.train.patience << "\n";
    os << "seed = " << cfg.train.seed << "\n";
    os << "threads = " << cfg.train.threads << "\n";
    os << "filter_negatives = " << (cfg.train.filter_negatives ? "true" : "false") << "\n";
    os << "project_entities = " << (cfg.train.project_entities ? "true" : "false") << "\n\n";
    os << "[regs]\n";
    os << "symmetric = " << cfg.eta_symmetric << "\n";
    os << "equivalence = " << cfg.eta_equivalence << "\n";
    os << "implication = " << cfg.eta_implication << "\n";
    os << "inverse = " << cfg.eta_inverse << "\n\n";
    os << "[output]\n";
    os << "dir = " << cfg.out_dir << "\n";
    os << "protocol = " << to_string(cfg.protocol) << "\n";
    os << "tie = " << (cfg.tie == TieMode::mid ? "mid"
                       : cfg.tie == TieMode::optimistic ? "optimistic" : "pessimistic")
       << "\n";
    return os.str();
}

// Named presets: the tuned configurations for the public benchmark splits.
// Data paths and output dir stay user-supplied.
inline const std::map<std::string, std::string>& preset_table() {
    static const std::map<std::string, std::string> presets = {
        {"fb15k-rp-lossB",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = b\ngamma1 = 0.4\n"
         "gamma2 = 0.5\nlambda0 = 100\n[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k-rp-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.4\n"
         "gamma2 = 0.5\nlambda0 = 10\nuse_slack = true\n[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k-rp-lossD",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = d\nmargin = 5\n"
         "[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.4\n"
         "gamma2 = 0.5\nlambda0 = 10\nuse_slack = true\n[train]\nnegatives = 10\n"},
        {"fb15k-transe-lossC",
         "[model]\nkind = transe\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.4\n"
         "gamma2 = 0.5\nlambda0 = 10\nuse_slack = true\n[train]\nnegatives = 10\n"},
        {"fb15k237-rp-lossB",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = b\ngamma1 = 1.5\n"
         "gamma2 = 2\nlambda0 = 100\n[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k237-rp-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 1.5\n"
         "gamma2 = 2\nlambda0 = 100\nuse_slack = true\n[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k237-rp-lossD",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = d\nmargin = 10\n"
         "[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"fb15k237-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 1.5\n"
         "gamma2 = 2\nlambda0 = 100\nuse_slack = true\n[train]\nnegatives = 10\n"},
        {"fb15k237-transe-lossC",
         "[model]\nkind = transe\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.4\n"
         "gamma2 = 0.5\nlambda0 = 100\nuse_slack = true\n[train]\nnegatives = 10\n"},
        {"wn18-rp-lossB",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = b\ngamma1 = 1\n"
         "gamma2 = 2\nlambda0 = 100\n[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"wn18-rp-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.6\n"
         "gamma2 = 1.7\nlambda0 = 100\nuse_slack = true\n[train]\nnegatives = 2\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"wn18-rp-lossD",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = d\nmargin = 10\n"
         "[train]\nnegatives = 10\n"
         "[regs]\nsymmetric = 0.1\nequivalence = 0.1\nimplication = 0.1\ninverse = 0.1\n"},
        {"wn18-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.6\n"
         "gamma2 = 1.7\nlambda0 = 100\nuse_slack = true\n[train]\nnegatives = 2\n"},
        {"wn18-transe-lossC",
         "[model]\nkind = transe\ndim = 200\n[loss]\ncondition = c\ngamma1 = 1\n"
         "gamma2 = 2\nlambda0 = 1\nuse_slack = true\n[train]\nnegatives = 10\n"},
        {"wn18rr-lossC",
         "[model]\nkind = transcomplex\ndim = 200\n[loss]\ncondition = c\ngamma1 = 1.6\n"
         "gamma2 = 2.7\nlambda0 = 1\nuse_slack = true\n[train]\nnegatives = 2\n"},
        {"wn18rr-transe-lossC",
         "[model]\nkind = transe\ndim = 200\n[loss]\ncondition = c\ngamma1 = 0.6\n"
         "gamma2 = 1.7\nlambda0 = 1\nuse_slack = true\n[train]\nnegatives = 2\n"},
        // Grid searched for the ball loss: 20 gamma1 values x 5 slack weights.
        {"sweep-gamma-lambda",
         "[loss]\ncondition = c\ngamma2 = 2.1\nuse_slack = true\n"
         "[sweep]\nloss.gamma1 = "
         "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2.0\n"
         "loss.lambda0 = 0.01,0.1,1,10,100\n"},
    };
    return presets;
}

inline ConfigMap preset_config(const std::string& name) {
    const auto& table = preset_table();
    auto it = table.find(name);
    if (it == table.end()) {
        std::string names;
        for (const auto& [n, _] : table) names += n + " ";
        throw ConfigError("unknown preset '" + name + "'; available: " + names);
    }
    return parse_config_text(it->second, "preset:" + name);
}

// Seed precedence: config file < --seed flag < TRANSBOUND_SEED env var.
inline void apply_seed_overrides(RunConfig& cfg, std::optional<std::uint64_t> cli_seed) {
    if (cli_seed) cfg.train.seed = *cli_seed;
    if (const char* env = std::getenv("TRANSBOUND_SEED"))
        cfg.train.seed = detail::parse_u64("TRANSBOUND_SEED", env);
}

} // namespace transbound

#endif
