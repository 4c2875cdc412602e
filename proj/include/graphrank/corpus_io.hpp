#ifndef GRAPHRANK_CORPUS_IO_HPP_
#define GRAPHRANK_CORPUS_IO_HPP_

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphrank/common.hpp"

namespace graphrank {

// One corpus item. Paragraph spans are byte ranges into raw_text, trimmed
// to their non-whitespace extent, non-overlapping and ordered by start.
// Text outside every span is kept in raw_text but belongs to no paragraph.
struct Document {
    std::string doc_id;
    std::string raw_text;
    std::vector<Span> paragraphs;
};

struct Topic {
    std::string query_id;
    std::string query_text;
};

struct RunEntry {
    std::string query_id;
    std::string doc_id;
    int rank = 0;
    double score = 0.0;
    std::string run_tag;

    bool operator==(const RunEntry&) const = default;
};

// Relevance judgments. Repeated (query, doc) lines collapse to the maximum
// grade; binarize() then maps any positive grade to 1, which is how
// section-level assessments are folded down to document level.
class Qrels {
public:
    void set(const std::string& query_id, const std::string& doc_id, int grade);

    // 0 for unjudged pairs.
    int grade(const std::string& query_id, const std::string& doc_id) const;
    bool has_query(const std::string& query_id) const;
    std::size_t relevant_count(const std::string& query_id) const;
    std::vector<std::string> query_ids() const;

    Qrels binarized() const;

    const std::map<std::string, std::map<std::string, int>>& judgments() const {
        return judgments_;
    }

private:
    std::map<std::string, std::map<std::string, int>> judgments_;
};

// Which element names delimit paragraphs in TREC-style markup.
// Matching is case-insensitive.
class ParagraphTagSet {
public:
    ParagraphTagSet() : ParagraphTagSet(std::set<std::string>{"p"}) {}
    explicit ParagraphTagSet(std::set<std::string> tags);

    bool contains(std::string_view tag_name) const;
    const std::set<std::string>& tags() const { return tags_; }

    // {p}
    static ParagraphTagSet defaults();
    // The INEX element list: ilrj, ip1..ip5, item-none, p, p1..p3, Bib, Bm, St.
    static ParagraphTagSet inex();
    // "p", "inex", or a comma-separated tag list.
    static ParagraphTagSet from_spec(const std::string& spec);

private:
    std::set<std::string> tags_; // lowercased
};

// TREC SGML-style corpora are not valid XML, so this is tag-tolerant
// line-oriented scanning: only DOC, DOCNO and the configured paragraph tags
// are interpreted; every other tag is stripped from the text. A document
// whose body contains no recognized paragraph tag gets one span covering
// its whole body.
std::vector<Document> parse_trec_corpus(std::string_view buffer,
                                        const ParagraphTagSet& paragraph_tags);
std::vector<Document> parse_trec_corpus(std::istream& in,
                                        const ParagraphTagSet& paragraph_tags);

// One JSON object per line: {"id": ..., "text": ...} or
// {"id": ..., "paragraphs": [...]}; paragraphs are joined by blank lines.
std::vector<Document> parse_jsonl_corpus(std::istream& in);

// TREC 6-column run format: query_id Q0 doc_id rank score tag.
// Ranks must be 1..n per query in file order, scores non-increasing.
std::vector<RunEntry> parse_run_file(std::istream& in);

// TREC 4-column qrels: query_id iteration doc_id grade.
Qrels parse_qrels(std::istream& in, bool binarize_any_positive);

// 2-column TSV: query_id TAB query_text.
std::vector<Topic> parse_topics(std::istream& in);

// Validates the RunEntry invariants up front, then writes six-column lines
// in input order. Scores render with at least six significant digits and
// enough precision that parsing the output recovers the exact double.
void write_run_file(const std::vector<RunEntry>& entries, std::ostream& out);

std::string format_run_score(double score);

// Reads a whole file; transparently inflates gzip (by magic bytes or .gz
// suffix).
std::string read_file_auto(const std::string& path);

} // namespace graphrank

#endif // GRAPHRANK_CORPUS_IO_HPP_
