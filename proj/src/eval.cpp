#include "graphrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

namespace graphrank {

double ndcg(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
            const std::string& query_id, int cutoff) {
    if (cutoff < 1)
        throw ValidationError("ndcg: cutoff must be >= 1");
    if (!qrels.has_query(query_id))
        throw ValidationError("ndcg: query '" + query_id + "' not in qrels");

    double dcg = 0.0;
    std::size_t depth = std::min(ranked_docs.size(), static_cast<std::size_t>(cutoff));
    for (std::size_t r = 0; r < depth; ++r) {
        int gain = qrels.grade(query_id, ranked_docs[r]);
        if (gain > 0)
            dcg += static_cast<double>(gain) / std::log2(static_cast<double>(r) + 2.0);
    }

    std::vector<int> grades;
    for (const auto& [doc, grade] : qrels.judgments().at(query_id))
        if (grade > 0)
            grades.push_back(grade);
    std::sort(grades.begin(), grades.end(), std::greater<int>());
    double idcg = 0.0;
    std::size_t ideal_depth = std::min(grades.size(), static_cast<std::size_t>(cutoff));
    for (std::size_t r = 0; r < ideal_depth; ++r)
        idcg += static_cast<double>(grades[r]) / std::log2(static_cast<double>(r) + 2.0);

    return idcg == 0.0 ? 0.0 : dcg / idcg;
}

double reciprocal_rank(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
                       const std::string& query_id) {
    for (std::size_t r = 0; r < ranked_docs.size(); ++r)
        if (qrels.grade(query_id, ranked_docs[r]) > 0)
            return 1.0 / static_cast<double>(r + 1);
    return 0.0;
}

double precision_at_k(const std::vector<std::string>& ranked_docs, const Qrels& qrels,
                      const std::string& query_id, int k) {
    if (k < 1)
        throw ValidationError("precision_at_k: k must be >= 1");
    std::size_t depth = std::min(ranked_docs.size(), static_cast<std::size_t>(k));
    std::size_t relevant = 0;
    for (std::size_t r = 0; r < depth; ++r)
        if (qrels.grade(query_id, ranked_docs[r]) > 0)
            ++relevant;
    return static_cast<double>(relevant) / static_cast<double>(k);
}

// ---------------------------------------------------------------------------
// Student t

namespace {

double incomplete_beta_cf(double a, double b, double x) {
    const int max_iter = 300;
    const double eps = 3e-14;
    const double fpmin = 1e-300;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin)
        d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin)
            d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin)
            d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin)
            c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            break;
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log(1.0 - x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * incomplete_beta_cf(a, b, x) / a;
    return 1.0 - bt * incomplete_beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double dof) {
    return regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

} // namespace

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw ValidationError("paired_t_test: length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    if (a.size() < 2)
        throw ValidationError("paired_t_test: need at least 2 pairs");
    std::size_t n = a.size();
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        mean += a[i] - b[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = (a[i] - b[i]) - mean;
        ss += d * d;
    }
    if (ss == 0.0)
        return TTestResult{0.0, 1.0}; // zero variance: t undefined
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    return TTestResult{t, student_t_two_tailed(t, static_cast<double>(n - 1))};
}

// ---------------------------------------------------------------------------
// Report assembly

MetricReport evaluate_run(const std::vector<RunEntry>& run, const Qrels& qrels,
                          int ndcg_cutoff, int precision_k) {
    MetricReport report;
    report.ndcg_cutoff = ndcg_cutoff;
    report.precision_k = precision_k;

    std::map<std::string, std::vector<std::string>> docs_by_query;
    for (const RunEntry& e : run)
        docs_by_query[e.query_id].push_back(e.doc_id);

    double sum_ndcg = 0.0, sum_rr = 0.0, sum_p = 0.0;
    for (const auto& [query_id, docs] : docs_by_query) {
        if (qrels.relevant_count(query_id) == 0) {
            report.excluded_queries.push_back(query_id);
            continue;
        }
        QueryMetrics m;
        m.ndcg = ndcg(docs, qrels, query_id, ndcg_cutoff);
        m.reciprocal_rank = reciprocal_rank(docs, qrels, query_id);
        m.p_at_k = precision_at_k(docs, qrels, query_id, precision_k);
        sum_ndcg += m.ndcg;
        sum_rr += m.reciprocal_rank;
        sum_p += m.p_at_k;
        report.per_query.emplace(query_id, m);
    }
    if (!report.per_query.empty()) {
        double n = static_cast<double>(report.per_query.size());
        report.means = QueryMetrics{sum_ndcg / n, sum_rr / n, sum_p / n};
    }
    return report;
}

MetricComparison compare_reports(const MetricReport& a, const MetricReport& b) {
    std::set<std::string> only_a, only_b;
    for (const auto& [q, m] : a.per_query)
        if (!b.per_query.count(q))
            only_a.insert(q);
    for (const auto& [q, m] : b.per_query)
        if (!a.per_query.count(q))
            only_b.insert(q);
    if (!only_a.empty() || !only_b.empty()) {
        std::string msg = "compare_reports: query sets differ;";
        for (const auto& q : only_a)
            msg += " +" + q;
        for (const auto& q : only_b)
            msg += " -" + q;
        throw ValidationError(msg);
    }
    std::vector<double> a_ndcg, b_ndcg, a_rr, b_rr, a_p, b_p;
    for (const auto& [q, m] : a.per_query) {
        const QueryMetrics& other = b.per_query.at(q);
        a_ndcg.push_back(m.ndcg);
        b_ndcg.push_back(other.ndcg);
        a_rr.push_back(m.reciprocal_rank);
        b_rr.push_back(other.reciprocal_rank);
        a_p.push_back(m.p_at_k);
        b_p.push_back(other.p_at_k);
    }
    MetricComparison cmp;
    cmp.ndcg = paired_t_test(a_ndcg, b_ndcg);
    cmp.reciprocal_rank = paired_t_test(a_rr, b_rr);
    cmp.p_at_k = paired_t_test(a_p, b_p);
    return cmp;
}

namespace {

std::string fmt(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

} // namespace

void write_report_tsv(const MetricReport& report, std::ostream& out,
                      const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines)
        out << "# " << line << '\n';
    out << "query\tndcg@" << report.ndcg_cutoff << "\trr\tp@" << report.precision_k << '\n';
    for (const auto& [q, m] : report.per_query)
        out << q << '\t' << fmt(m.ndcg, 6) << '\t' << fmt(m.reciprocal_rank, 6) << '\t'
            << fmt(m.p_at_k, 6) << '\n';
    out << "MEAN\t" << fmt(report.means.ndcg, 6) << '\t' << fmt(report.means.reciprocal_rank, 6)
        << '\t' << fmt(report.means.p_at_k, 6) << '\n';
    if (!report.excluded_queries.empty()) {
        out << "# excluded (no relevant documents):";
        for (const auto& q : report.excluded_queries)
            out << ' ' << q;
        out << '\n';
    }
}

std::string format_summary_table(
    const std::vector<std::pair<std::string, MetricReport>>& runs,
    const MetricComparison* comparison) {
    std::size_t name_w = 4;
    for (const auto& [name, report] : runs)
        name_w = std::max(name_w, name.size());
    std::ostringstream out;
    out << std::string(name_w, ' ') << "    NDCG     MRR    P@" << (runs.empty() ? 10 : runs[0].second.precision_k)
        << '\n';
    for (const auto& [name, report] : runs) {
        out << name << std::string(name_w - name.size(), ' ') << "  " << fmt(report.means.ndcg, 4)
            << "  " << fmt(report.means.reciprocal_rank, 4) << "  " << fmt(report.means.p_at_k, 4)
            << '\n';
    }
    if (comparison != nullptr) {
        out << "p-value" << std::string(name_w > 7 ? name_w - 7 : 0, ' ') << "  "
            << fmt(comparison->ndcg.p_two_tailed, 4) << "  "
            << fmt(comparison->reciprocal_rank.p_two_tailed, 4) << "  "
            << fmt(comparison->p_at_k.p_two_tailed, 4) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Corpus statistics

CorpusStats corpus_stats(const std::vector<SegmentedDocument>& corpus, StatsUnit unit) {
    if (corpus.empty())
        throw ValidationError("corpus_stats: empty corpus");
    CorpusStats stats;
    stats.unit = unit;
    std::size_t total_tokens = 0;
    bool first = true;
    for (const SegmentedDocument& doc : corpus) {
        const auto& spans =
            unit == StatsUnit::Sentence ? doc.sentence_spans : doc.paragraph_spans;
        std::vector<std::size_t> tokens_per_unit(spans.size(), 0);
        for (const Token& t : doc.tokens) {
            std::uint32_t idx =
                unit == StatsUnit::Sentence ? t.sentence_idx : t.paragraph_idx;
            ++tokens_per_unit[idx];
        }
        for (std::size_t i = 0; i < spans.size(); ++i) {
            std::size_t chars = spans[i].size();
            std::size_t toks = tokens_per_unit[i];
            if (first) {
                stats.min_length_chars = stats.max_length_chars = chars;
                stats.min_tokens = stats.max_tokens = toks;
                first = false;
            } else {
                stats.min_length_chars = std::min(stats.min_length_chars, chars);
                stats.max_length_chars = std::max(stats.max_length_chars, chars);
                stats.min_tokens = std::min(stats.min_tokens, toks);
                stats.max_tokens = std::max(stats.max_tokens, toks);
            }
            total_tokens += toks;
            ++stats.unit_count;
        }
    }
    if (stats.unit_count == 0)
        throw ValidationError("corpus_stats: corpus has no token-bearing units");
    stats.average_tokens =
        static_cast<double>(total_tokens) / static_cast<double>(stats.unit_count);
    return stats;
}

std::string format_stats_table(const std::vector<CorpusStats>& columns) {
    auto label = [](StatsUnit u) { return u == StatsUnit::Sentence ? "sent" : "para"; };
    const char* rows[] = {"min length", "max length", "min tokens", "max tokens",
                          "average tokens"};
    std::ostringstream out;
    out << std::string(14, ' ');
    for (const auto& c : columns) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%12s", label(c.unit));
        out << buf;
    }
    out << '\n';
    for (int r = 0; r < 5; ++r) {
        char head[32];
        std::snprintf(head, sizeof head, "%-14s", rows[r]);
        out << head;
        for (const auto& c : columns) {
            char buf[32];
            switch (r) {
            case 0: std::snprintf(buf, sizeof buf, "%12zu", c.min_length_chars); break;
            case 1: std::snprintf(buf, sizeof buf, "%12zu", c.max_length_chars); break;
            case 2: std::snprintf(buf, sizeof buf, "%12zu", c.min_tokens); break;
            case 3: std::snprintf(buf, sizeof buf, "%12zu", c.max_tokens); break;
            default: std::snprintf(buf, sizeof buf, "%12.2f", c.average_tokens); break;
            }
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace graphrank
