// graphrank: TextRank term weights over per-document co-occurrence graphs
// (fixed-width or sentence/paragraph windows), idf-combined re-ranking of
// TREC runs, and retrieval evaluation.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "graphrank/pipeline.hpp"

namespace {

// Config mistakes exit with 2, data/runtime failures with 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optional key=value file per subcommand. Keys are the long option names
// without the leading dashes; explicitly given flags always win. Environment
// variables are never consulted.
class ConfigKeys {
public:
    void bind_string(CLI::App* sub, const std::string& key, std::string& target) {
        bind(sub, key, [&target](const std::string& v) { target = v; });
    }
    void bind_double(CLI::App* sub, const std::string& key, double& target) {
        bind(sub, key, [&target, key](const std::string& v) {
            char* end = nullptr;
            target = std::strtod(v.c_str(), &end);
            if (v.empty() || !end || *end != '\0')
                throw UsageError("config key '" + key + "' needs a number, got '" + v + "'");
        });
    }
    void bind_int(CLI::App* sub, const std::string& key, int& target) {
        bind(sub, key, [&target, key](const std::string& v) {
            char* end = nullptr;
            long n = std::strtol(v.c_str(), &end, 10);
            if (v.empty() || !end || *end != '\0')
                throw UsageError("config key '" + key + "' needs an integer, got '" + v + "'");
            target = static_cast<int>(n);
        });
    }
    void bind_flag(CLI::App* sub, const std::string& key, bool& target) {
        bind(sub, key, [&target, key](const std::string& v) {
            if (v == "1" || v == "true" || v == "yes")
                target = true;
            else if (v == "0" || v == "false" || v == "no")
                target = false;
            else
                throw UsageError("config key '" + key + "' needs a boolean, got '" + v + "'");
        });
    }

    void apply(CLI::App* sub, const std::string& path) const {
        std::ifstream in(path);
        if (!in)
            throw UsageError("cannot open config file '" + path + "'");
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#')
                continue;
            std::size_t eq = line.find('=', start);
            if (eq == std::string::npos)
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": expected key=value");
            std::string key = trim(line.substr(start, eq - start));
            std::string value = trim(line.substr(eq + 1));
            auto it = setters_.find({sub, key});
            if (it == setters_.end())
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "' for subcommand " +
                                 sub->get_name());
            if (sub->count("--" + key) > 0)
                continue; // command line wins
            it->second(value);
        }
    }

private:
    static std::string trim(std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    void bind(CLI::App* sub, const std::string& key,
              std::function<void(const std::string&)> setter) {
        setters_.emplace(std::make_pair(sub, key), std::move(setter));
    }
    std::map<std::pair<CLI::App*, std::string>, std::function<void(const std::string&)>>
        setters_;
};

void require_path(const std::string& value, const char* flag) {
    if (value.empty())
        throw UsageError(std::string(flag) + " is required");
}

void validate_common(const graphrank::PipelineConfig& cfg) {
    if (cfg.corpus_format != "trec" && cfg.corpus_format != "jsonl")
        throw UsageError("--format must be trec or jsonl");
    if (cfg.workers < 1)
        throw UsageError("--workers must be >= 1");
}

void validate_weights(const graphrank::PipelineConfig& cfg) {
    require_path(cfg.corpus_path, "--corpus");
    require_path(cfg.weights_path, "--out");
    validate_common(cfg);
    try {
        graphrank::WindowPolicy::parse(cfg.policy);
        graphrank::RankConfig{cfg.damping, cfg.iterations, cfg.initial_score}.validate();
        graphrank::ParagraphTagSet::from_spec(cfg.paragraph_tags);
    } catch (const graphrank::ValidationError& e) {
        throw UsageError(e.what());
    }
}

void validate_rerank(const graphrank::PipelineConfig& cfg) {
    require_path(cfg.weights_path, "--weights");
    require_path(cfg.idf_path, "--idf");
    require_path(cfg.topics_path, "--topics");
    require_path(cfg.run_in_path, "--run-in");
    require_path(cfg.run_out_path, "--run-out");
    if (cfg.missing_weights != "strict" && cfg.missing_weights != "lenient")
        throw UsageError("--missing-weights must be strict or lenient");
    if (cfg.interpolate_lambda < 0.0 || cfg.interpolate_lambda > 1.0)
        throw UsageError("--interpolate-lambda must lie in [0, 1]");
}

void validate_eval(const graphrank::PipelineConfig& cfg) {
    require_path(cfg.run_in_path, "--run");
    require_path(cfg.qrels_path, "--qrels");
    if (cfg.ndcg_cutoff < 1)
        throw UsageError("--ndcg-cutoff must be >= 1");
}

void validate_stats(const graphrank::PipelineConfig& cfg) {
    require_path(cfg.corpus_path, "--corpus");
    validate_common(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TextRank term weighting and re-ranking over co-occurrence graphs"};
    app.require_subcommand(1);

    graphrank::PipelineConfig cfg;
    ConfigKeys keys;
    std::map<CLI::App*, std::string> config_paths;
    int command = 0; // 1 weights, 2 rerank, 3 eval, 4 stats

    auto add_config_opt = [&](CLI::App* sub) {
        sub->add_option("--config", config_paths[sub],
                        "key=value config file; flags override it");
    };
    auto add_corpus_opts = [&](CLI::App* sub) {
        keys.bind_string(sub, "corpus", cfg.corpus_path);
        keys.bind_string(sub, "format", cfg.corpus_format);
        keys.bind_string(sub, "paragraph-tags", cfg.paragraph_tags);
        keys.bind_flag(sub, "stopwords", cfg.stopwords);
        sub->add_option("--corpus", cfg.corpus_path, "corpus file (gzip ok)");
        sub->add_option("--format", cfg.corpus_format, "trec or jsonl");
        sub->add_option("--paragraph-tags", cfg.paragraph_tags,
                        "paragraph tag list, or the 'inex' preset");
        sub->add_flag("--stopwords", cfg.stopwords, "drop stopwords before graph building");
    };

    CLI::App* weights = app.add_subcommand("weights", "compute per-document term weights");
    add_config_opt(weights);
    add_corpus_opts(weights);
    weights->add_option("--policy", cfg.policy, "fixed<k>, sentence or paragraph");
    weights->add_option("--damping", cfg.damping, "damping factor (default 0.85)");
    weights->add_option("--iterations", cfg.iterations, "sweep count (default 200)");
    weights->add_option("--initial-score", cfg.initial_score, "starting vertex score");
    weights->add_flag("--fixed-respects-sentences", cfg.fixed_window_respects_sentences,
                      "keep fixed windows inside sentence boundaries");
    weights->add_option("--out", cfg.weights_path, "weights TSV output");
    weights->add_option("--idf-out", cfg.idf_path, "idf TSV output");
    weights->add_option("--workers", cfg.workers, "worker threads (default 1)");
    weights->add_flag("--force", cfg.force, "recompute even on a fingerprint match");
    keys.bind_string(weights, "policy", cfg.policy);
    keys.bind_double(weights, "damping", cfg.damping);
    keys.bind_int(weights, "iterations", cfg.iterations);
    keys.bind_double(weights, "initial-score", cfg.initial_score);
    keys.bind_flag(weights, "fixed-respects-sentences", cfg.fixed_window_respects_sentences);
    keys.bind_string(weights, "out", cfg.weights_path);
    keys.bind_string(weights, "idf-out", cfg.idf_path);
    keys.bind_int(weights, "workers", cfg.workers);
    keys.bind_flag(weights, "force", cfg.force);
    weights->callback([&] { command = 1; });

    CLI::App* rerank = app.add_subcommand("rerank", "re-rank an initial run with "
                                                    "idf x TextRank scoring");
    add_config_opt(rerank);
    rerank->add_option("--weights", cfg.weights_path, "weights TSV from 'weights'");
    rerank->add_option("--idf", cfg.idf_path, "idf TSV from 'weights'");
    rerank->add_option("--topics", cfg.topics_path, "topics TSV (query_id TAB text)");
    rerank->add_option("--run-in", cfg.run_in_path, "initial TREC run");
    rerank->add_option("--run-out", cfg.run_out_path, "re-ranked run output");
    rerank->add_option("--missing-weights", cfg.missing_weights,
                       "strict (error) or lenient (score 0)");
    rerank->add_option("--interpolate-lambda", cfg.interpolate_lambda,
                       "blend with first-stage scores; 0 = pure replacement");
    rerank->add_flag("--clamp-negative", cfg.clamp_negative,
                     "clamp negative term contributions at zero");
    rerank->add_flag("--stopwords", cfg.stopwords, "match the weights' stopword setting");
    keys.bind_string(rerank, "weights", cfg.weights_path);
    keys.bind_string(rerank, "idf", cfg.idf_path);
    keys.bind_string(rerank, "topics", cfg.topics_path);
    keys.bind_string(rerank, "run-in", cfg.run_in_path);
    keys.bind_string(rerank, "run-out", cfg.run_out_path);
    keys.bind_string(rerank, "missing-weights", cfg.missing_weights);
    keys.bind_double(rerank, "interpolate-lambda", cfg.interpolate_lambda);
    keys.bind_flag(rerank, "clamp-negative", cfg.clamp_negative);
    keys.bind_flag(rerank, "stopwords", cfg.stopwords);
    rerank->callback([&] { command = 2; });

    CLI::App* eval = app.add_subcommand("eval", "NDCG / MRR / P@10 for a run");
    add_config_opt(eval);
    eval->add_option("--run", cfg.run_in_path, "run to evaluate");
    eval->add_option("--baseline", cfg.baseline_run_path,
                     "second run for a paired t-test comparison");
    eval->add_option("--qrels", cfg.qrels_path, "TREC qrels");
    eval->add_option("--ndcg-cutoff", cfg.ndcg_cutoff, "NDCG depth (default 1000)");
    eval->add_option("--out", cfg.report_out_path, "per-query report TSV");
    keys.bind_string(eval, "run", cfg.run_in_path);
    keys.bind_string(eval, "baseline", cfg.baseline_run_path);
    keys.bind_string(eval, "qrels", cfg.qrels_path);
    keys.bind_int(eval, "ndcg-cutoff", cfg.ndcg_cutoff);
    keys.bind_string(eval, "out", cfg.report_out_path);
    eval->callback([&] { command = 3; });

    CLI::App* stats = app.add_subcommand("stats", "sentence/paragraph corpus statistics");
    add_config_opt(stats);
    add_corpus_opts(stats);
    stats->add_option("--out", cfg.report_out_path, "stats table output");
    keys.bind_string(stats, "out", cfg.report_out_path);
    stats->callback([&] { command = 4; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* subs[] = {nullptr, weights, rerank, eval, stats};
        CLI::App* active = command >= 1 && command <= 4 ? subs[command] : nullptr;
        if (active == nullptr)
            return 2;
        if (!config_paths[active].empty())
            keys.apply(active, config_paths[active]);

        switch (command) {
        case 1:
            validate_weights(cfg);
            graphrank::cmd_weights(cfg, std::cerr);
            break;
        case 2:
            validate_rerank(cfg);
            graphrank::cmd_rerank(cfg, std::cerr);
            break;
        case 3: {
            validate_eval(cfg);
            auto outcome = graphrank::cmd_eval(cfg, std::cerr);
            std::cout << outcome.table;
            break;
        }
        default: {
            validate_stats(cfg);
            auto outcome = graphrank::cmd_stats(cfg, std::cerr);
            std::cout << outcome.table;
            break;
        }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
