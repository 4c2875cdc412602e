#ifndef GRAPHRANK_EVAL_HPP_
#define GRAPHRANK_EVAL_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "graphrank/corpus_io.hpp"
#include "graphrank/textproc.hpp"

namespace graphrank {

// Binary-gain NDCG with log2(r + 1) discounting from rank 1. The ideal
// ordering ranks every judged document of the query by grade; queries with
// no relevant documents score 0. Unknown query_id is an error.
double ndcg(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
            const std::string& query_id, int cutoff);

// 1 / rank of the first relevant document, 0 when none is retrieved.
double reciprocal_rank(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
                       const std::string& query_id);

// Relevant among the top k over k; short lists count as padded with
// non-relevant documents.
double precision_at_k(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
                      const std::string& query_id, int k);

struct TTestResult {
    double t = 0.0;
    double p_two_tailed = 1.0;
};

// Standard paired two-tailed t test with n - 1 degrees of freedom. Zero
// variance of the differences is degenerate and reports {t: 0, p: 1}.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct QueryMetrics {
    double ndcg = 0.0;
    double reciprocal_rank = 0.0;
    double p_at_k = 0.0;
};

// Per-query metrics plus their arithmetic means. Queries without a single
// judged-relevant document are excluded from the means and listed.
struct MetricReport {
    std::map<std::string, QueryMetrics> per_query;
    QueryMetrics means;
    std::vector<std::string> excluded_queries;
    int ndcg_cutoff = 1000;
    int precision_k = 10;
};

MetricReport evaluate_run(const std::vector<RunEntry>& run, const Qrels& qrels,
                          int ndcg_cutoff = 1000, int precision_k = 10);

struct MetricComparison {
    TTestResult ndcg;
    TTestResult reciprocal_rank;
    TTestResult p_at_k;
};

// Paired t-tests metric by metric over the queries present in both reports;
// a query-set mismatch is an error naming the symmetric difference.
MetricComparison compare_reports(const MetricReport& a, const MetricReport& b);

// TSV: one row per query, then a MEAN row; excluded queries go into a
// trailing comment.
void write_report_tsv(const MetricReport& report, std::ostream& out,
                      const std::vector<std::string>& header_lines = {});

// Aligned table with one row per run and NDCG / MRR / P@k columns, with
// optional significance row for exactly two runs.
std::string format_summary_table(
    const std::vector<std::pair<std::string, MetricReport>>& runs,
    const MetricComparison* comparison = nullptr);

enum class StatsUnit { Sentence, Paragraph };

struct CorpusStats {
    StatsUnit unit = StatsUnit::Sentence;
    std::size_t unit_count = 0;
    std::size_t min_length_chars = 0;
    std::size_t max_length_chars = 0;
    std::size_t min_tokens = 0;
    std::size_t max_tokens = 0;
    double average_tokens = 0.0;
};

// Length (in characters of the unit's source span) and token statistics
// over every token-bearing unit in the corpus.
CorpusStats corpus_stats(const std::vector<SegmentedDocument>& corpus, StatsUnit unit);

// Five-statistic table with one column per unit type.
std::string format_stats_table(const std::vector<CorpusStats>& columns);

} // namespace graphrank

#endif // GRAPHRANK_EVAL_HPP_
