#include <doctest.h>

#include <cmath>
#include <sstream>

#include "graphrank/eval.hpp"

using namespace graphrank;

TEST_SUITE_BEGIN("eval");

namespace {

Qrels qrels_of(const std::vector<std::tuple<std::string, std::string, int>>& rows) {
    Qrels q;
    for (const auto& [query, doc, grade] : rows)
        q.set(query, doc, grade);
    return q;
}

} // namespace

TEST_CASE("ndcg hand vector: [rel, nonrel, rel] with two relevant") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 0}, {"q1", "c", 1}});
    // DCG = 1 + 0 + 1/log2(4) = 1.5; IDCG = 1 + 1/log2(3) = 1.63093.
    double expected = 1.5 / (1.0 + 1.0 / std::log2(3.0));
    CHECK(ndcg({"a", "b", "c"}, q, "q1", 3) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ndcg({"a", "b", "c"}, q, "q1", 3) == doctest::Approx(0.91972).epsilon(1e-5));
}

TEST_CASE("ndcg: perfect ranking scores 1, all-miss scores 0") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 1}, {"q1", "x", 0}});
    CHECK(ndcg({"a", "b"}, q, "q1", 10) == doctest::Approx(1.0));
    CHECK(ndcg({"x", "y", "z"}, q, "q1", 10) == 0.0);
}

TEST_CASE("ndcg: no relevant docs at all gives 0; unknown query errors") {
    Qrels q = qrels_of({{"q1", "a", 0}});
    CHECK(ndcg({"a"}, q, "q1", 5) == 0.0);
    CHECK_THROWS_AS(ndcg({"a"}, q, "q404", 5), ValidationError);
    CHECK_THROWS_AS(ndcg({"a"}, q, "q1", 0), ValidationError);
}

TEST_CASE("ndcg: ideal ordering uses all judged docs, not just retrieved ones") {
    // Two relevant docs exist; only one retrieved at rank 1.
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 1}});
    double expected = 1.0 / (1.0 + 1.0 / std::log2(3.0));
    CHECK(ndcg({"a"}, q, "q1", 10) == doctest::Approx(expected));
}

TEST_CASE("ndcg: swapping two non-relevant documents never changes the value") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 0}, {"q1", "c", 0}, {"q1", "d", 1}});
    double before = ndcg({"a", "b", "c", "d"}, q, "q1", 4);
    double after = ndcg({"a", "c", "b", "d"}, q, "q1", 4);
    CHECK(before == after);
}

TEST_CASE("ndcg respects the cutoff") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 1}});
    // Relevant docs at ranks 3 and 4 are invisible at cutoff 2.
    CHECK(ndcg({"x", "y", "a", "b"}, q, "q1", 2) == 0.0);
    CHECK(ndcg({"x", "y", "a", "b"}, q, "q1", 4) > 0.0);
}

TEST_CASE("reciprocal rank vectors") {
    Qrels q = qrels_of({{"q1", "rel", 1}});
    CHECK(reciprocal_rank({"a", "b", "rel"}, q, "q1") == doctest::Approx(1.0 / 3.0));
    CHECK(reciprocal_rank({"rel"}, q, "q1") == 1.0);
    CHECK(reciprocal_rank({"a", "b"}, q, "q1") == 0.0);
}

TEST_CASE("precision at k vectors, including the padding rule") {
    Qrels q = qrels_of({{"q1", "r1", 1}, {"q1", "r2", 1}, {"q1", "r3", 1},
                        {"q1", "r4", 1}, {"q1", "r5", 1}});
    CHECK(precision_at_k({"r1", "x", "r2", "x2", "r3", "x3", "r4", "x4", "x5", "x6"}, q, "q1",
                         10) == doctest::Approx(0.4));
    CHECK(precision_at_k({"r1", "r2", "r3", "r4", "r5"}, q, "q1", 10) == doctest::Approx(0.5));
    CHECK(precision_at_k({"r1", "x"}, q, "q1", 1) == 1.0);
    CHECK_THROWS_AS(precision_at_k({"r1"}, q, "q1", 0), ValidationError);
}

TEST_CASE("paired t-test: identical vectors give t = 0, p = 1") {
    std::vector<double> a = {0.2, 0.4, 0.9};
    auto r = paired_t_test(a, a);
    CHECK(r.t == 0.0);
    CHECK(r.p_two_tailed == 1.0);
}

TEST_CASE("paired t-test: constant shift has zero variance, degenerate result") {
    std::vector<double> b(10, 0.5), a;
    for (double v : b)
        a.push_back(v + 0.1);
    auto r = paired_t_test(a, b);
    CHECK(r.t == 0.0);
    CHECK(r.p_two_tailed == 1.0);
}

TEST_CASE("paired t-test hand vector: t = 0.5 / (1.29099 / 2)") {
    auto r = paired_t_test({1, 2, 3, 4}, {2, 2, 2, 2});
    CHECK(r.t == doctest::Approx(0.7746).epsilon(1e-4));
    // F(0.7746; nu=3) = 0.75249 -> two-tailed p = 0.49503.
    CHECK(r.p_two_tailed == doctest::Approx(0.4950).epsilon(2e-3));
}

TEST_CASE("paired t-test: p matches the classic critical value t(4) = 2.776 -> 0.05") {
    // Construct 5 pairs whose differences have mean m and sd s such that
    // t = m / (s / sqrt(5)) = 2.776.
    std::vector<double> d = {-1.0, -0.5, 0.0, 0.5, 1.0}; // mean 0, sd 0.7906
    double target_t = 2.776;
    double shift = target_t * (0.790569415 / std::sqrt(5.0));
    std::vector<double> a, b(d.size(), 0.0);
    for (double v : d)
        a.push_back(v + shift);
    auto r = paired_t_test(a, b);
    CHECK(r.t == doctest::Approx(2.776).epsilon(1e-6));
    CHECK(r.p_two_tailed == doctest::Approx(0.05).epsilon(5e-3));
}

TEST_CASE("paired t-test input validation") {
    CHECK_THROWS_AS(paired_t_test({1, 2}, {1}), ValidationError);
    CHECK_THROWS_AS(paired_t_test({1}, {1}), ValidationError);
}

TEST_CASE("evaluate_run: means over judged queries, exclusions reported") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q2", "b", 0}, {"q3", "c", 1}});
    std::vector<RunEntry> run = {
        {"q1", "a", 1, 3.0, "t"}, {"q1", "x", 2, 2.0, "t"},
        {"q2", "b", 1, 3.0, "t"},                          // q2 has no relevant docs
        {"q3", "x", 1, 3.0, "t"}, {"q3", "c", 2, 2.0, "t"},
    };
    MetricReport report = evaluate_run(run, q, 1000, 10);
    REQUIRE(report.per_query.size() == 2);
    CHECK(report.excluded_queries == std::vector<std::string>{"q2"});
    CHECK(report.per_query.at("q1").reciprocal_rank == 1.0);
    CHECK(report.per_query.at("q3").reciprocal_rank == 0.5);
    CHECK(report.means.reciprocal_rank == doctest::Approx(0.75));
    // Mean of per-query values, not micro-averaged.
    CHECK(report.means.ndcg ==
          doctest::Approx((report.per_query.at("q1").ndcg + report.per_query.at("q3").ndcg) /
                          2.0));
}

TEST_CASE("compare_reports: run against itself has p = 1 everywhere") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q2", "b", 1}});
    std::vector<RunEntry> run = {{"q1", "a", 1, 2.0, "t"}, {"q2", "x", 1, 2.0, "t"},
                                 {"q2", "b", 2, 1.0, "t"}};
    MetricReport r = evaluate_run(run, q, 100, 10);
    MetricComparison cmp = compare_reports(r, r);
    CHECK(cmp.ndcg.p_two_tailed == 1.0);
    CHECK(cmp.reciprocal_rank.p_two_tailed == 1.0);
    CHECK(cmp.p_at_k.p_two_tailed == 1.0);
}

TEST_CASE("compare_reports: query-set mismatch lists the symmetric difference") {
    MetricReport a, b;
    a.per_query["q1"] = {};
    a.per_query["q2"] = {};
    b.per_query["q2"] = {};
    b.per_query["q3"] = {};
    CHECK_THROWS_WITH_AS(compare_reports(a, b), doctest::Contains("q1"), ValidationError);
    try {
        compare_reports(a, b);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("q3") != std::string::npos);
    }
}

TEST_CASE("report TSV has per-query rows, a MEAN row, and the exclusion comment") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q2", "b", 0}});
    std::vector<RunEntry> run = {{"q1", "a", 1, 2.0, "t"}, {"q2", "b", 1, 2.0, "t"}};
    MetricReport report = evaluate_run(run, q, 10, 10);
    std::ostringstream out;
    write_report_tsv(report, out, {"fingerprint: beef"});
    std::string text = out.str();
    CHECK(text.find("# fingerprint: beef") != std::string::npos);
    CHECK(text.find("q1\t") != std::string::npos);
    CHECK(text.find("MEAN\t") != std::string::npos);
    CHECK(text.find("excluded") != std::string::npos);
    CHECK(text.find("q2") != std::string::npos);
}

namespace {

SegmentedDocument seg_doc(const std::string& id,
                          const std::vector<std::vector<std::string>>& sentences) {
    SegmentedDocument doc;
    doc.doc_id = id;
    std::size_t offset = 0;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        std::size_t chars = 0;
        for (const auto& w : sentences[s]) {
            Token t;
            t.surface = w;
            t.stem = w;
            t.position = static_cast<std::uint32_t>(doc.tokens.size());
            t.sentence_idx = static_cast<std::uint32_t>(s);
            t.paragraph_idx = 0;
            doc.tokens.push_back(std::move(t));
            chars += w.size() + 1;
        }
        doc.sentence_spans.push_back(Span{offset, offset + chars});
        offset += chars + 1;
    }
    doc.paragraph_spans.push_back(Span{0, offset});
    return doc;
}

} // namespace

TEST_CASE("corpus_stats: token counts per sentence") {
    // Sentences "ab." and "c d e." -> 1 and 3 tokens.
    auto stats = corpus_stats({seg_doc("d", {{"ab"}, {"c", "d", "e"}})}, StatsUnit::Sentence);
    CHECK(stats.unit_count == 2);
    CHECK(stats.min_tokens == 1);
    CHECK(stats.max_tokens == 3);
    CHECK(stats.average_tokens == doctest::Approx(2.0));
}

TEST_CASE("corpus_stats: single-unit corpus has min = max") {
    auto stats = corpus_stats({seg_doc("d", {{"one", "two"}})}, StatsUnit::Paragraph);
    CHECK(stats.unit_count == 1);
    CHECK(stats.min_tokens == stats.max_tokens);
    CHECK(stats.min_length_chars == stats.max_length_chars);
    CHECK(stats.average_tokens == doctest::Approx(2.0));
}

TEST_CASE("corpus_stats rejects empty input") {
    CHECK_THROWS_AS(corpus_stats({}, StatsUnit::Sentence), ValidationError);
}

TEST_CASE("stats table shows the five statistics for both units") {
    auto doc = seg_doc("d", {{"a", "b"}, {"c"}});
    std::string table =
        format_stats_table({corpus_stats({doc}, StatsUnit::Sentence),
                            corpus_stats({doc}, StatsUnit::Paragraph)});
    CHECK(table.find("sent") != std::string::npos);
    CHECK(table.find("para") != std::string::npos);
    for (const char* row : {"min length", "max length", "min tokens", "max tokens",
                            "average tokens"})
        CHECK(table.find(row) != std::string::npos);
}

TEST_CASE("metric ranges: everything in [0, 1]") {
    Qrels q = qrels_of({{"q1", "a", 1}, {"q1", "b", 1}, {"q1", "c", 0}});
    std::vector<std::string> ranked = {"c", "a", "x", "b"};
    double n = ndcg(ranked, q, "q1", 4);
    double rr = reciprocal_rank(ranked, q, "q1");
    double p = precision_at_k(ranked, q, "q1", 10);
    for (double v : {n, rr, p}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_SUITE_END();
