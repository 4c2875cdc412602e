#include "graphrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>

#include "graphrank/textproc.hpp"

namespace graphrank {

std::uint32_t IdfTable::doc_freq(std::string_view stem) const {
    auto it = doc_freq_.find(std::string(stem));
    return it == doc_freq_.end() ? 0 : it->second;
}

double IdfTable::idf(std::string_view stem) const {
    std::uint32_t df = doc_freq(stem);
    if (df == 0)
        return 0.0;
    return static_cast<double>(corpus_size_) / static_cast<double>(df);
}

IdfTable build_idf(const std::vector<SegmentedDocument>& corpus) {
    if (corpus.empty())
        throw ValidationError("build_idf: empty corpus");
    std::unordered_map<std::string, std::uint32_t> df;
    std::set<std::string_view> doc_stems;
    for (const SegmentedDocument& doc : corpus) {
        doc_stems.clear();
        for (const Token& t : doc.tokens)
            doc_stems.insert(t.stem);
        for (std::string_view stem : doc_stems)
            ++df[std::string(stem)];
    }
    return IdfTable(corpus.size(), std::move(df));
}

double term_contribution(double idf, double textrank_score) {
    return std::log(idf) * std::log(textrank_score);
}

ScoreBreakdown score_document_ex(const std::vector<std::string>& query_stems,
                                 const TermWeights& weights, const IdfTable& idf,
                                 const ScoreOptions& opts) {
    if (query_stems.empty())
        throw ValidationError("score_document: empty query");
    ScoreBreakdown out;
    for (const std::string& stem : query_stems) {
        std::uint32_t df = idf.doc_freq(stem);
        if (df == 0)
            continue; // term not in the corpus
        auto s = weights.score(stem);
        if (!s || *s <= 0.0)
            continue; // term not in this document
        double contribution = term_contribution(idf.idf(stem), *s);
        if (opts.clamp_negative_contributions && contribution < 0.0)
            contribution = 0.0;
        out.score += contribution;
        ++out.contributing_terms;
    }
    return out;
}

double score_document(const std::vector<std::string>& query_stems, const TermWeights& weights,
                      const IdfTable& idf, const ScoreOptions& opts) {
    return score_document_ex(query_stems, weights, idf, opts).score;
}

RerankResult rerank(const std::vector<RunEntry>& run, const std::vector<Topic>& topics,
                    const std::map<std::string, TermWeights>& per_doc_weights,
                    const IdfTable& idf, const std::string& policy_name,
                    const RerankOptions& opts) {
    std::map<std::string, std::vector<std::string>> stems_by_query;
    for (const Topic& t : topics)
        stems_by_query[t.query_id] = stem_query(t.query_text, opts.text);

    const std::string tag = "textrank-" + policy_name;

    // Group while preserving the run's query order.
    std::vector<std::string> query_order;
    std::map<std::string, std::vector<const RunEntry*>> grouped;
    for (const RunEntry& e : run) {
        auto [it, fresh] = grouped.try_emplace(e.query_id);
        if (fresh)
            query_order.push_back(e.query_id);
        it->second.push_back(&e);
    }

    RerankResult result;
    result.entries.reserve(run.size());
    for (const std::string& query_id : query_order) {
        auto topic_it = stems_by_query.find(query_id);
        if (topic_it == stems_by_query.end())
            throw ValidationError("rerank: run contains query '" + query_id +
                                  "' with no topic");
        const auto& query_stems = topic_it->second;

        QueryRerankSummary summary;
        summary.query_id = query_id;

        struct Scored {
            const RunEntry* entry;
            double score;
        };
        std::vector<Scored> scored;
        scored.reserve(grouped[query_id].size());
        for (const RunEntry* e : grouped[query_id]) {
            double graph_score = 0.0;
            auto w = per_doc_weights.find(e->doc_id);
            if (w == per_doc_weights.end()) {
                if (opts.missing_weights == MissingWeightsPolicy::Error)
                    throw ValidationError("rerank: no weights for doc '" + e->doc_id + "'");
                ++summary.docs_missing_weights;
                ++summary.docs_zero_overlap;
            } else if (query_stems.empty()) {
                ++summary.docs_zero_overlap;
            } else {
                ScoreBreakdown b = score_document_ex(query_stems, w->second, idf, opts.scoring);
                graph_score = b.score;
                if (b.contributing_terms == 0)
                    ++summary.docs_zero_overlap;
            }
            double final_score = opts.interpolate_lambda * e->score +
                                 (1.0 - opts.interpolate_lambda) * graph_score;
            scored.push_back({e, final_score});
            ++summary.docs_scored;
        }
        std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
            if (a.score != b.score)
                return a.score > b.score;
            return a.entry->rank < b.entry->rank; // stable w.r.t. the initial run
        });
        int rank = 0;
        for (const Scored& s : scored) {
            RunEntry e;
            e.query_id = query_id;
            e.doc_id = s.entry->doc_id;
            e.rank = ++rank;
            e.score = s.score;
            e.run_tag = tag;
            result.entries.push_back(std::move(e));
        }
        result.summaries.push_back(summary);
    }
    return result;
}

void write_idf_tsv(const IdfTable& idf, std::ostream& out,
                   const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines)
        out << "# " << line << '\n';
    out << "N\t" << idf.corpus_size_ << '\n';
    std::vector<std::pair<std::string_view, std::uint32_t>> rows;
    rows.reserve(idf.doc_freq_.size());
    for (const auto& [stem, df] : idf.doc_freq_)
        rows.emplace_back(stem, df);
    std::sort(rows.begin(), rows.end());
    for (const auto& [stem, df] : rows)
        out << stem << '\t' << df << '\n';
}

IdfFile read_idf_tsv(std::istream& in) {
    IdfFile file;
    std::string line;
    std::size_t line_no = 0;
    std::size_t corpus_size = 0;
    bool saw_n = false;
    std::unordered_map<std::string, std::uint32_t> df;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            file.header_lines.push_back(line.substr(start));
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("idf line " + std::to_string(line_no) + ": expected two columns");
        std::string key = line.substr(0, tab);
        std::string value = line.substr(tab + 1);
        char* end = nullptr;
        long n = std::strtol(value.c_str(), &end, 10);
        if (value.empty() || !end || *end != '\0' || n < 0)
            throw ParseError("idf line " + std::to_string(line_no) + ": bad count '" + value +
                             "'");
        if (!saw_n) {
            if (key != "N")
                throw ParseError("idf line " + std::to_string(line_no) +
                                 ": first row must be the corpus size N");
            corpus_size = static_cast<std::size_t>(n);
            saw_n = true;
        } else {
            df[key] = static_cast<std::uint32_t>(n);
        }
    }
    if (!saw_n)
        throw ParseError("idf file has no N row");
    file.table = IdfTable(corpus_size, std::move(df));
    return file;
}

} // namespace graphrank
