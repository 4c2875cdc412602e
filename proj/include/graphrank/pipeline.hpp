#ifndef GRAPHRANK_PIPELINE_HPP_
#define GRAPHRANK_PIPELINE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphrank/eval.hpp"
#include "graphrank/ranking.hpp"

namespace graphrank {

// Resolved settings for one command invocation. The relevant subset is
// canonicalized into a fingerprint that heads every output file, so stale
// caches are detected and provenance travels with the artifact. Nothing here
// reads environment variables and no command consults wall-clock time for
// file content, which keeps reruns byte-identical.
struct PipelineConfig {
    std::string corpus_path;
    std::string corpus_format = "trec"; // trec | jsonl
    std::string paragraph_tags = "p";   // tag list or the "inex" preset
    std::string policy = "fixed5";
    double damping = 0.85;
    int iterations = 200;
    double initial_score = 1.0;
    bool stopwords = false;
    bool fixed_window_respects_sentences = false;

    std::string weights_path;
    std::string idf_path;
    std::string topics_path;
    std::string run_in_path;
    std::string run_out_path;
    std::string qrels_path;
    std::string baseline_run_path;
    std::string report_out_path;

    std::string missing_weights = "strict"; // strict | lenient
    double interpolate_lambda = 0.0;
    bool clamp_negative = false;
    int ndcg_cutoff = 1000;

    int workers = 1;
    bool force = false; // recompute even on a fingerprint match
};

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

struct WeightsOutcome {
    bool weights_recomputed = false;
    bool idf_recomputed = false;
    std::size_t documents = 0;
};

// Segments the corpus, builds one graph per document under the configured
// policy, iterates TextRank, and writes the weights and idf tables. When an
// output already starts with a matching fingerprint the file is left
// untouched (cache hit) unless cfg.force is set.
WeightsOutcome cmd_weights(const PipelineConfig& cfg, std::ostream& log);

// Re-scores an initial run with the idf x TextRank formula under the
// weights file's policy and writes the re-ranked run.
RerankResult cmd_rerank(const PipelineConfig& cfg, std::ostream& log);

struct EvalOutcome {
    MetricReport run_report;
    std::vector<std::pair<std::string, MetricReport>> rows; // tag -> report
    bool compared = false;
    MetricComparison comparison;
    std::string table;
};

EvalOutcome cmd_eval(const PipelineConfig& cfg, std::ostream& log);

struct StatsOutcome {
    CorpusStats sentence;
    CorpusStats paragraph;
    std::string table;
};

StatsOutcome cmd_stats(const PipelineConfig& cfg, std::ostream& log);

// Helpers shared by commands and tests.
std::vector<Document> load_corpus(const PipelineConfig& cfg);
std::vector<SegmentedDocument> segment_corpus(const std::vector<Document>& docs,
                                              const PipelineConfig& cfg);
std::string run_tag_from_weights_header(const std::vector<std::string>& header_lines);

} // namespace graphrank

#endif // GRAPHRANK_PIPELINE_HPP_
