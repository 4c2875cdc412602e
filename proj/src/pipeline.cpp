#include "graphrank/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "graphrank/textproc.hpp"

namespace graphrank {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// First fingerprint found in an existing file's comment header, if any.
std::string existing_fingerprint(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        return {};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '#')
            break;
        const std::string key = "fingerprint: ";
        std::size_t at = line.find(key);
        if (at != std::string::npos)
            return line.substr(at + key.size());
    }
    return {};
}

std::string header_value(const std::vector<std::string>& header_lines, const std::string& key) {
    for (const auto& line : header_lines) {
        if (line.rfind(key + ": ", 0) == 0)
            return line.substr(key.size() + 2);
    }
    return {};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw ParseError("write failed for '" + path + "'");
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return in;
}

} // namespace

std::vector<Document> load_corpus(const PipelineConfig& cfg) {
    std::string bytes = read_file_auto(cfg.corpus_path);
    if (cfg.corpus_format == "trec")
        return parse_trec_corpus(std::string_view(bytes),
                                 ParagraphTagSet::from_spec(cfg.paragraph_tags));
    if (cfg.corpus_format == "jsonl") {
        std::istringstream in(bytes);
        return parse_jsonl_corpus(in);
    }
    throw ValidationError("unknown corpus format '" + cfg.corpus_format + "'");
}

std::vector<SegmentedDocument> segment_corpus(const std::vector<Document>& docs,
                                              const PipelineConfig& cfg) {
    SegmentOptions opts;
    opts.remove_stopwords = cfg.stopwords;
    std::vector<SegmentedDocument> out(docs.size());
    std::atomic<std::size_t> cursor{0};
    int workers = std::max(1, cfg.workers);
    auto worker = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= docs.size())
                return;
            out[i] = segment(docs[i], opts);
        }
    };
    if (workers == 1 || docs.size() < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    return out;
}

namespace {

std::string weights_config_string(const PipelineConfig& cfg, std::uint64_t corpus_hash) {
    std::ostringstream s;
    s << "corpus=" << hex64(corpus_hash) << " format=" << cfg.corpus_format
      << " tags=" << cfg.paragraph_tags << " policy=" << WindowPolicy::parse(cfg.policy).name()
      << " damping=" << fmt_double(cfg.damping) << " iterations=" << cfg.iterations
      << " initial=" << fmt_double(cfg.initial_score) << " stopwords=" << (cfg.stopwords ? 1 : 0)
      << " fixed_respects_sentences=" << (cfg.fixed_window_respects_sentences ? 1 : 0)
      << " tokenizer=" << kTokenizerVersion;
    return s.str();
}

std::string idf_config_string(const PipelineConfig& cfg, std::uint64_t corpus_hash) {
    std::ostringstream s;
    s << "corpus=" << hex64(corpus_hash) << " format=" << cfg.corpus_format
      << " tags=" << cfg.paragraph_tags << " stopwords=" << (cfg.stopwords ? 1 : 0)
      << " tokenizer=" << kTokenizerVersion;
    return s.str();
}

std::vector<std::string> make_header(const std::string& kind, const std::string& config) {
    return {
        "graphrank " + kind,
        "config: " + config,
        "fingerprint: " + hex64(fnv1a64(config)),
    };
}

} // namespace

WeightsOutcome cmd_weights(const PipelineConfig& cfg, std::ostream& log) {
    if (cfg.corpus_path.empty() || cfg.weights_path.empty())
        throw ValidationError("weights: corpus and output paths are required");
    WindowPolicy policy = WindowPolicy::parse(cfg.policy);
    RankConfig rank{cfg.damping, cfg.iterations, cfg.initial_score};
    rank.validate();

    auto t0 = Clock::now();
    std::string corpus_bytes = read_file_auto(cfg.corpus_path);
    std::uint64_t corpus_hash = fnv1a64(corpus_bytes);

    std::string weights_config = weights_config_string(cfg, corpus_hash);
    std::string idf_config = idf_config_string(cfg, corpus_hash);
    std::string weights_fp = hex64(fnv1a64(weights_config));
    std::string idf_fp = hex64(fnv1a64(idf_config));

    WeightsOutcome outcome;
    bool need_weights = cfg.force || existing_fingerprint(cfg.weights_path) != weights_fp;
    bool need_idf = !cfg.idf_path.empty() &&
                    (cfg.force || existing_fingerprint(cfg.idf_path) != idf_fp);
    if (!need_weights && !need_idf) {
        log << "weights: cache hit (" << weights_fp << "), nothing to do\n";
        return outcome;
    }

    std::vector<Document> docs;
    if (cfg.corpus_format == "trec") {
        docs = parse_trec_corpus(std::string_view(corpus_bytes),
                                 ParagraphTagSet::from_spec(cfg.paragraph_tags));
    } else if (cfg.corpus_format == "jsonl") {
        std::istringstream in(corpus_bytes);
        docs = parse_jsonl_corpus(in);
    } else {
        throw ValidationError("unknown corpus format '" + cfg.corpus_format + "'");
    }
    corpus_bytes.clear();
    corpus_bytes.shrink_to_fit();
    if (docs.empty())
        throw ValidationError("weights: corpus '" + cfg.corpus_path + "' has no documents");
    outcome.documents = docs.size();
    log << "weights: parsed " << docs.size() << " documents in " << ms_since(t0) << " ms\n";

    auto t1 = Clock::now();
    SegmentOptions seg_opts;
    seg_opts.remove_stopwords = cfg.stopwords;
    GraphOptions graph_opts;
    graph_opts.fixed_window_respects_sentences = cfg.fixed_window_respects_sentences;

    int workers = std::max(1, cfg.workers);
    std::vector<TermWeights> weights(docs.size());
    std::vector<std::vector<std::string>> doc_stems(docs.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= docs.size())
                return;
            SegmentedDocument seg_doc = segment(docs[i], seg_opts);
            TermGraph graph = build_graph(seg_doc, policy, graph_opts);
            weights[i] = textrank(graph, rank);
            doc_stems[i] = graph.vertices();
        }
    };
    if (workers == 1 || docs.size() < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        std::size_t pool_size = std::min<std::size_t>(static_cast<std::size_t>(workers),
                                                      docs.size());
        for (std::size_t w = 0; w < pool_size; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    log << "weights: computed " << policy.name() << " weights with " << workers
        << " worker(s) in " << ms_since(t1) << " ms\n";

    auto t2 = Clock::now();
    if (need_weights) {
        std::ostringstream body;
        write_weights_tsv(weights, body, make_header("weights", weights_config));
        write_text_file(cfg.weights_path, body.str());
        outcome.weights_recomputed = true;
        log << "weights: wrote " << cfg.weights_path << "\n";
    }
    if (need_idf) {
        std::unordered_map<std::string, std::uint32_t> df;
        for (const auto& stems : doc_stems)
            for (const auto& stem : stems)
                ++df[stem];
        IdfTable idf(docs.size(), std::move(df));
        std::ostringstream body;
        write_idf_tsv(idf, body, make_header("idf", idf_config));
        write_text_file(cfg.idf_path, body.str());
        outcome.idf_recomputed = true;
        log << "weights: wrote " << cfg.idf_path << "\n";
    }
    log << "weights: outputs written in " << ms_since(t2) << " ms\n";
    return outcome;
}

std::string run_tag_from_weights_header(const std::vector<std::string>& header_lines) {
    std::string config = header_value(header_lines, "config");
    std::istringstream in(config);
    std::string pair;
    while (in >> pair) {
        if (pair.rfind("policy=", 0) == 0)
            return pair.substr(7);
    }
    return "unknown";
}

RerankResult cmd_rerank(const PipelineConfig& cfg, std::ostream& log) {
    if (cfg.weights_path.empty() || cfg.idf_path.empty() || cfg.topics_path.empty() ||
        cfg.run_in_path.empty() || cfg.run_out_path.empty())
        throw ValidationError(
            "rerank: weights, idf, topics, run-in and run-out paths are required");

    auto t0 = Clock::now();
    auto weights_in = open_or_throw(cfg.weights_path);
    WeightsFile wf = read_weights_tsv(weights_in);
    std::map<std::string, TermWeights> per_doc;
    for (auto& w : wf.weights) {
        std::string id = w.doc_id();
        per_doc.emplace(std::move(id), std::move(w));
    }
    auto idf_in = open_or_throw(cfg.idf_path);
    IdfFile idf = read_idf_tsv(idf_in);
    auto topics_in = open_or_throw(cfg.topics_path);
    std::vector<Topic> topics = parse_topics(topics_in);
    auto run_in = open_or_throw(cfg.run_in_path);
    std::vector<RunEntry> run = parse_run_file(run_in);
    log << "rerank: loaded " << per_doc.size() << " weight records, " << topics.size()
        << " topics, " << run.size() << " run entries in " << ms_since(t0) << " ms\n";

    RerankOptions opts;
    if (cfg.missing_weights == "strict")
        opts.missing_weights = MissingWeightsPolicy::Error;
    else if (cfg.missing_weights == "lenient")
        opts.missing_weights = MissingWeightsPolicy::ScoreZero;
    else
        throw ValidationError("rerank: missing-weights must be strict or lenient");
    opts.interpolate_lambda = cfg.interpolate_lambda;
    opts.scoring.clamp_negative_contributions = cfg.clamp_negative;
    opts.text.remove_stopwords = cfg.stopwords;

    std::string policy_name = run_tag_from_weights_header(wf.header_lines);
    RerankResult result = rerank(run, topics, per_doc, idf.table, policy_name, opts);

    std::ostringstream config;
    config << "weights_fp=" << header_value(wf.header_lines, "fingerprint")
           << " idf_fp=" << header_value(idf.header_lines, "fingerprint")
           << " topics=" << hex64(fnv1a64(read_file_auto(cfg.topics_path)))
           << " run=" << hex64(fnv1a64(read_file_auto(cfg.run_in_path)))
           << " idf_def=N/df log=natural tiebreak=initial-rank"
           << " missing=" << cfg.missing_weights
           << " lambda=" << fmt_double(cfg.interpolate_lambda)
           << " clamp=" << (cfg.clamp_negative ? 1 : 0)
           << " stopwords=" << (cfg.stopwords ? 1 : 0);
    std::ostringstream body;
    for (const auto& line : make_header("run", config.str()))
        body << "# " << line << '\n';
    write_run_file(result.entries, body);
    write_text_file(cfg.run_out_path, body.str());

    for (const auto& s : result.summaries) {
        log << "rerank: query " << s.query_id << ": scored " << s.docs_scored << " docs, "
            << s.docs_zero_overlap << " with zero query-term overlap";
        if (s.docs_missing_weights > 0)
            log << ", " << s.docs_missing_weights << " without weights (scored 0)";
        log << "\n";
    }
    log << "rerank: wrote " << cfg.run_out_path << "\n";
    return result;
}

EvalOutcome cmd_eval(const PipelineConfig& cfg, std::ostream& log) {
    if (cfg.run_in_path.empty() || cfg.qrels_path.empty())
        throw ValidationError("eval: run and qrels paths are required");

    auto qrels_in = open_or_throw(cfg.qrels_path);
    Qrels qrels = parse_qrels(qrels_in, /*binarize_any_positive=*/true);
    auto run_in = open_or_throw(cfg.run_in_path);
    std::vector<RunEntry> run = parse_run_file(run_in);
    std::string run_name = run.empty() ? std::string("run") : run.front().run_tag;

    EvalOutcome outcome;
    outcome.run_report = evaluate_run(run, qrels, cfg.ndcg_cutoff, 10);
    outcome.rows.emplace_back(run_name, outcome.run_report);

    if (!cfg.baseline_run_path.empty()) {
        auto base_in = open_or_throw(cfg.baseline_run_path);
        std::vector<RunEntry> baseline = parse_run_file(base_in);
        std::string base_name =
            baseline.empty() ? std::string("baseline") : baseline.front().run_tag;
        MetricReport base_report = evaluate_run(baseline, qrels, cfg.ndcg_cutoff, 10);
        outcome.comparison = compare_reports(outcome.run_report, base_report);
        outcome.compared = true;
        outcome.rows.emplace_back(base_name, base_report);
    }

    outcome.table =
        format_summary_table(outcome.rows, outcome.compared ? &outcome.comparison : nullptr);

    if (!cfg.report_out_path.empty()) {
        std::ostringstream config;
        config << "run=" << hex64(fnv1a64(read_file_auto(cfg.run_in_path)));
        if (!cfg.baseline_run_path.empty())
            config << " baseline=" << hex64(fnv1a64(read_file_auto(cfg.baseline_run_path)));
        config << " qrels=" << hex64(fnv1a64(read_file_auto(cfg.qrels_path)))
               << " ndcg_cutoff=" << cfg.ndcg_cutoff << " p_k=10 binarize=1";
        std::ostringstream body;
        write_report_tsv(outcome.run_report, body, make_header("report", config.str()));
        write_text_file(cfg.report_out_path, body.str());
        log << "eval: wrote " << cfg.report_out_path << "\n";
    }
    if (!outcome.run_report.excluded_queries.empty()) {
        log << "eval: excluded " << outcome.run_report.excluded_queries.size()
            << " quer" << (outcome.run_report.excluded_queries.size() == 1 ? "y" : "ies")
            << " with no relevant documents\n";
    }
    return outcome;
}

StatsOutcome cmd_stats(const PipelineConfig& cfg, std::ostream& log) {
    if (cfg.corpus_path.empty())
        throw ValidationError("stats: corpus path is required");
    auto t0 = Clock::now();
    std::vector<Document> docs = load_corpus(cfg);
    std::vector<SegmentedDocument> segs = segment_corpus(docs, cfg);
    StatsOutcome outcome;
    outcome.sentence = corpus_stats(segs, StatsUnit::Sentence);
    outcome.paragraph = corpus_stats(segs, StatsUnit::Paragraph);
    outcome.table = format_stats_table({outcome.sentence, outcome.paragraph});
    log << "stats: " << docs.size() << " documents in " << ms_since(t0) << " ms\n";

    if (!cfg.report_out_path.empty()) {
        std::string corpus_hash = hex64(fnv1a64(read_file_auto(cfg.corpus_path)));
        std::string config = "corpus=" + corpus_hash + " format=" + cfg.corpus_format +
                             " tags=" + cfg.paragraph_tags +
                             " stopwords=" + (cfg.stopwords ? "1" : "0") +
                             " tokenizer=" + kTokenizerVersion;
        std::string body;
        for (const auto& line : make_header("stats", config))
            body += "# " + line + "\n";
        body += outcome.table;
        write_text_file(cfg.report_out_path, body);
        log << "stats: wrote " << cfg.report_out_path << "\n";
    }
    return outcome;
}

} // namespace graphrank
