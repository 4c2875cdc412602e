#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "graphrank/pipeline.hpp"

using namespace graphrank;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("pipeline");

namespace {

const char* kDataDir = GRAPHRANK_DATA_DIR;

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("graphrank_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PipelineConfig demo_config(const fs::path& dir, const std::string& policy) {
    PipelineConfig cfg;
    cfg.corpus_path = std::string(kDataDir) + "/demo/corpus.trec";
    cfg.topics_path = std::string(kDataDir) + "/demo/topics.tsv";
    cfg.run_in_path = std::string(kDataDir) + "/demo/run_initial.txt";
    cfg.qrels_path = std::string(kDataDir) + "/demo/qrels.txt";
    cfg.policy = policy;
    cfg.weights_path = (dir / ("weights_" + policy + ".tsv")).string();
    cfg.idf_path = (dir / "idf.tsv").string();
    cfg.run_out_path = (dir / ("run_" + policy + ".txt")).string();
    return cfg;
}

} // namespace

TEST_CASE("read_file_auto inflates gzip-compressed corpora") {
    fs::path dir = fresh_dir("gzip");
    std::string original = read_all(fs::path(kDataDir) / "demo" / "corpus.trec");

    fs::path gz_path = dir / "corpus.trec.gz";
    gzFile gz = gzopen(gz_path.string().c_str(), "wb");
    REQUIRE(gz != nullptr);
    REQUIRE(gzwrite(gz, original.data(), static_cast<unsigned>(original.size())) ==
            static_cast<int>(original.size()));
    gzclose(gz);

    CHECK(read_file_auto(gz_path.string()) == original);

    // And the whole weights pipeline accepts the compressed file.
    PipelineConfig cfg = demo_config(dir, "fixed5");
    cfg.corpus_path = gz_path.string();
    std::ostringstream log;
    auto outcome = cmd_weights(cfg, log);
    CHECK(outcome.documents == 50);
    CHECK(outcome.weights_recomputed);
}

TEST_CASE("weights: fingerprinted header, cache hit on rerun, recompute on change") {
    fs::path dir = fresh_dir("cache");
    PipelineConfig cfg = demo_config(dir, "sentence");
    std::ostringstream log1;
    auto first = cmd_weights(cfg, log1);
    CHECK(first.weights_recomputed);
    CHECK(first.idf_recomputed);
    CHECK(first.documents == 50);

    std::string weights_text = read_all(cfg.weights_path);
    CHECK(weights_text.rfind("# graphrank weights", 0) == 0);
    CHECK(weights_text.find("# fingerprint: ") != std::string::npos);
    CHECK(weights_text.find("policy=sentence") != std::string::npos);

    std::ostringstream log2;
    auto second = cmd_weights(cfg, log2);
    CHECK_FALSE(second.weights_recomputed);
    CHECK_FALSE(second.idf_recomputed);
    CHECK(log2.str().find("cache hit") != std::string::npos);
    CHECK(read_all(cfg.weights_path) == weights_text);

    // A different damping invalidates the cache.
    cfg.damping = 0.5;
    std::ostringstream log3;
    auto third = cmd_weights(cfg, log3);
    CHECK(third.weights_recomputed);
    CHECK(read_all(cfg.weights_path) != weights_text);
}

TEST_CASE("weights -> rerank -> eval produce byte-identical outputs across reruns "
          "and worker counts") {
    fs::path dir1 = fresh_dir("det1");
    fs::path dir8 = fresh_dir("det8");
    std::ostringstream sink;
    std::vector<std::string> policies = {"fixed5", "sentence", "paragraph"};

    for (const auto& dir_workers : {std::pair<fs::path, int>{dir1, 1}, {dir8, 8}}) {
        for (const auto& policy : policies) {
            PipelineConfig cfg = demo_config(dir_workers.first, policy);
            cfg.workers = dir_workers.second;
            cfg.force = true;
            cmd_weights(cfg, sink);
            cmd_rerank(cfg, sink);
            PipelineConfig eval_cfg = cfg;
            eval_cfg.run_in_path = cfg.run_out_path;
            eval_cfg.report_out_path =
                (dir_workers.first / ("report_" + policy + ".tsv")).string();
            cmd_eval(eval_cfg, sink);
        }
    }
    for (const auto& policy : policies) {
        CHECK(read_all(dir1 / ("weights_" + policy + ".tsv")) ==
              read_all(dir8 / ("weights_" + policy + ".tsv")));
        CHECK(read_all(dir1 / ("run_" + policy + ".txt")) ==
              read_all(dir8 / ("run_" + policy + ".txt")));
        CHECK(read_all(dir1 / ("report_" + policy + ".tsv")) ==
              read_all(dir8 / ("report_" + policy + ".tsv")));
    }
    CHECK(read_all(dir1 / "idf.tsv") == read_all(dir8 / "idf.tsv"));
}

TEST_CASE("rerank: output parses, permutes the input, carries the policy tag") {
    fs::path dir = fresh_dir("rerank");
    PipelineConfig cfg = demo_config(dir, "sentence");
    std::ostringstream sink;
    cmd_weights(cfg, sink);
    auto result = cmd_rerank(cfg, sink);
    REQUIRE(result.summaries.size() == 5);
    for (const auto& s : result.summaries)
        CHECK(s.docs_scored == 20);

    std::ifstream in(cfg.run_out_path);
    auto entries = parse_run_file(in);
    CHECK(entries.size() == 100);
    for (const auto& e : entries)
        CHECK(e.run_tag == "textrank-sentence");
}

TEST_CASE("eval: comparing two of our runs fills the two-row table") {
    fs::path dir = fresh_dir("evalcmp");
    std::ostringstream sink;
    for (const auto& policy : {"fixed5", "sentence"}) {
        PipelineConfig cfg = demo_config(dir, policy);
        cmd_weights(cfg, sink);
        cmd_rerank(cfg, sink);
    }
    PipelineConfig cfg = demo_config(dir, "sentence");
    cfg.run_in_path = (dir / "run_sentence.txt").string();
    cfg.baseline_run_path = (dir / "run_fixed5.txt").string();
    auto outcome = cmd_eval(cfg, sink);
    CHECK(outcome.compared);
    REQUIRE(outcome.rows.size() == 2);
    CHECK(outcome.rows[0].first == "textrank-sentence");
    CHECK(outcome.rows[1].first == "textrank-fixed5");
    CHECK(outcome.table.find("NDCG") != std::string::npos);
    CHECK(outcome.table.find("p-value") != std::string::npos);
    CHECK(outcome.run_report.per_query.size() == 5);
}

TEST_CASE("eval: config echo and fingerprint head the report file") {
    fs::path dir = fresh_dir("evalhdr");
    PipelineConfig cfg = demo_config(dir, "fixed5");
    cfg.run_in_path = std::string(kDataDir) + "/demo/run_initial.txt";
    cfg.report_out_path = (dir / "report.tsv").string();
    std::ostringstream sink;
    cmd_eval(cfg, sink);
    std::string text = read_all(cfg.report_out_path);
    CHECK(text.rfind("# graphrank report", 0) == 0);
    CHECK(text.find("# config: ") != std::string::npos);
    CHECK(text.find("# fingerprint: ") != std::string::npos);
}

TEST_CASE("stats: demo corpus yields both unit rows with sane ranges") {
    PipelineConfig cfg;
    cfg.corpus_path = std::string(kDataDir) + "/demo/corpus.trec";
    std::ostringstream sink;
    auto outcome = cmd_stats(cfg, sink);
    CHECK(outcome.sentence.unit_count > 50); // several sentences per document
    CHECK(outcome.paragraph.unit_count >= 50);
    CHECK(outcome.sentence.min_tokens >= 1);
    CHECK(outcome.sentence.max_tokens <= outcome.paragraph.max_tokens);
    CHECK(outcome.sentence.average_tokens <= outcome.paragraph.average_tokens);
    CHECK(outcome.sentence.min_length_chars <= outcome.sentence.max_length_chars);
    CHECK(outcome.table.find("sent") != std::string::npos);
    CHECK(outcome.table.find("para") != std::string::npos);
}

TEST_CASE("run_tag_from_weights_header extracts the policy") {
    CHECK(run_tag_from_weights_header(
              {"graphrank weights", "config: corpus=x policy=paragraph damping=0.85",
               "fingerprint: 1"}) == "paragraph");
    CHECK(run_tag_from_weights_header({}) == "unknown");
}

TEST_SUITE_END();
