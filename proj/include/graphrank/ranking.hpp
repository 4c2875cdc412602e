#ifndef GRAPHRANK_RANKING_HPP_
#define GRAPHRANK_RANKING_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphrank/corpus_io.hpp"
#include "graphrank/textrank.hpp"

namespace graphrank {

// Corpus document frequencies. idf is the raw ratio N / df; the scoring
// formula applies the natural log, and no smoothing or offsets are added.
class IdfTable {
public:
    IdfTable() = default;
    IdfTable(std::size_t corpus_size, std::unordered_map<std::string, std::uint32_t> doc_freq)
        : corpus_size_(corpus_size), doc_freq_(std::move(doc_freq)) {}

    std::size_t corpus_size() const { return corpus_size_; }
    std::uint32_t doc_freq(std::string_view stem) const;
    double idf(std::string_view stem) const; // 0 for df = 0 (caller skips those)
    std::size_t distinct_terms() const { return doc_freq_.size(); }

private:
    std::size_t corpus_size_ = 0;
    std::unordered_map<std::string, std::uint32_t> doc_freq_;

    friend void write_idf_tsv(const IdfTable&, std::ostream&,
                              const std::vector<std::string>&);
};

// df(t) = number of documents containing stem t at least once.
// Throws ValidationError on an empty corpus.
IdfTable build_idf(const std::vector<SegmentedDocument>& corpus);

// One query term's contribution: ln(idf) * ln(textrank score).
double term_contribution(double idf, double textrank_score);

struct ScoreOptions {
    // Clamp each term contribution at zero (scores below 1 otherwise push a
    // document down). Ablation flag; default keeps the raw formula.
    bool clamp_negative_contributions = false;
};

struct ScoreBreakdown {
    double score = 0.0;
    std::size_t contributing_terms = 0; // query stems found in doc with df > 0
};

// Sum of term_contribution over the query stems (a multiset: repeated stems count
// each time). Stems with df = 0 or absent from this document's weights are
// skipped. No document length normalisation.
double score_document(const std::vector<std::string>& query_stems, const TermWeights& weights,
                      const IdfTable& idf, const ScoreOptions& opts = {});
ScoreBreakdown score_document_ex(const std::vector<std::string>& query_stems,
                                 const TermWeights& weights, const IdfTable& idf,
                                 const ScoreOptions& opts = {});

enum class MissingWeightsPolicy {
    Error,  // default: re-ranking a document without weights is a hard error
    ScoreZero,
};

struct RerankOptions {
    MissingWeightsPolicy missing_weights = MissingWeightsPolicy::Error;
    // Final score = lambda * first-stage score + (1 - lambda) * graph score.
    // 0 = pure replacement re-ranking.
    double interpolate_lambda = 0.0;
    ScoreOptions scoring;
    SegmentOptions text; // queries run through the same pipeline as documents
};

struct QueryRerankSummary {
    std::string query_id;
    std::size_t docs_scored = 0;
    std::size_t docs_zero_overlap = 0; // no query term contributed
    std::size_t docs_missing_weights = 0;
};

struct RerankResult {
    std::vector<RunEntry> entries;
    std::vector<QueryRerankSummary> summaries;
};

// Reorders each query's entries by score descending, ties broken by the
// initial rank (stable with respect to the first-stage run), ranks rewritten
// 1..n, run_tag set to "textrank-<policy>". Topics missing for a query in
// the run is an error; so is a doc_id without weights under the default
// policy.
RerankResult rerank(const std::vector<RunEntry>& run, const std::vector<Topic>& topics,
                    const std::map<std::string, TermWeights>& per_doc_weights,
                    const IdfTable& idf, const std::string& policy_name,
                    const RerankOptions& opts = {});

// "N <TAB> <corpus size>" then "stem TAB df" rows, sorted.
void write_idf_tsv(const IdfTable& idf, std::ostream& out,
                   const std::vector<std::string>& header_lines = {});

struct IdfFile {
    std::vector<std::string> header_lines;
    IdfTable table;
};

IdfFile read_idf_tsv(std::istream& in);

} // namespace graphrank

#endif // GRAPHRANK_RANKING_HPP_
