#include "graphrank/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <zlib.h>

#include <json.hpp>

namespace graphrank {

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view trim_view(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

// Shrinks [begin, end) to its non-whitespace extent within text.
Span trim_span(const std::string& text, std::size_t begin, std::size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
        ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
        --end;
    return Span{begin, end};
}

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_tag_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

} // namespace

// ---------------------------------------------------------------------------
// Qrels

void Qrels::set(const std::string& query_id, const std::string& doc_id, int grade) {
    if (grade < 0)
        throw ValidationError("qrels: negative grade for (" + query_id + ", " + doc_id + ")");
    judgments_[query_id][doc_id] = grade;
}

int Qrels::grade(const std::string& query_id, const std::string& doc_id) const {
    auto q = judgments_.find(query_id);
    if (q == judgments_.end())
        return 0;
    auto d = q->second.find(doc_id);
    return d == q->second.end() ? 0 : d->second;
}

bool Qrels::has_query(const std::string& query_id) const {
    return judgments_.count(query_id) != 0;
}

std::size_t Qrels::relevant_count(const std::string& query_id) const {
    auto q = judgments_.find(query_id);
    if (q == judgments_.end())
        return 0;
    std::size_t n = 0;
    for (const auto& [doc, grade] : q->second)
        if (grade > 0)
            ++n;
    return n;
}

std::vector<std::string> Qrels::query_ids() const {
    std::vector<std::string> ids;
    ids.reserve(judgments_.size());
    for (const auto& [q, docs] : judgments_)
        ids.push_back(q);
    return ids;
}

Qrels Qrels::binarized() const {
    Qrels out;
    for (const auto& [q, docs] : judgments_)
        for (const auto& [d, grade] : docs)
            out.set(q, d, grade > 0 ? 1 : 0);
    return out;
}

// ---------------------------------------------------------------------------
// ParagraphTagSet

ParagraphTagSet::ParagraphTagSet(std::set<std::string> tags) {
    for (const auto& t : tags)
        tags_.insert(lower_ascii(t));
}

bool ParagraphTagSet::contains(std::string_view tag_name) const {
    return tags_.count(lower_ascii(tag_name)) != 0;
}

ParagraphTagSet ParagraphTagSet::defaults() {
    return ParagraphTagSet(std::set<std::string>{"p"});
}

ParagraphTagSet ParagraphTagSet::inex() {
    return ParagraphTagSet(std::set<std::string>{"ilrj", "ip1", "ip2", "ip3", "ip4", "ip5",
                                                 "item-none", "p", "p1", "p2", "p3", "bib",
                                                 "bm", "st"});
}

ParagraphTagSet ParagraphTagSet::from_spec(const std::string& spec) {
    std::string s = lower_ascii(trim_view(spec));
    if (s.empty() || s == "p" || s == "default")
        return defaults();
    if (s == "inex")
        return inex();
    std::set<std::string> tags;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos)
            comma = s.size();
        auto tag = trim_view(std::string_view(s).substr(pos, comma - pos));
        if (!tag.empty())
            tags.insert(std::string(tag));
        pos = comma + 1;
    }
    if (tags.empty())
        throw ValidationError("paragraph tag spec '" + spec + "' names no tags");
    return ParagraphTagSet(std::move(tags));
}

// ---------------------------------------------------------------------------
// TREC corpus scanner

namespace {

struct Tag {
    bool closing = false;
    std::string name;       // lowercased
    std::size_t next = 0;   // offset just past '>'
};

// Parses a tag starting at '<'. Returns false when the '<' does not open a
// plausible tag, in which case it is literal text.
bool scan_tag(std::string_view buf, std::size_t at, Tag& tag) {
    std::size_t i = at + 1;
    tag.closing = false;
    if (i < buf.size() && buf[i] == '/') {
        tag.closing = true;
        ++i;
    }
    std::size_t name_begin = i;
    while (i < buf.size() && is_tag_name_char(buf[i]))
        ++i;
    if (i == name_begin)
        return false;
    tag.name = lower_ascii(buf.substr(name_begin, i - name_begin));
    // Skip attributes up to the closing '>'.
    while (i < buf.size() && buf[i] != '>' && buf[i] != '<')
        ++i;
    if (i >= buf.size() || buf[i] != '>')
        return false;
    tag.next = i + 1;
    return true;
}

} // namespace

std::vector<Document> parse_trec_corpus(std::string_view buffer,
                                        const ParagraphTagSet& paragraph_tags) {
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;

    bool in_doc = false;
    bool in_docno = false;
    bool saw_paragraph_tag = false;
    bool paragraph_open = false;
    std::size_t doc_start_offset = 0;
    std::size_t paragraph_begin = 0;
    Document current;
    std::string docno_text;
    int docno_count = 0;

    auto open_paragraph = [&]() {
        current.raw_text.push_back(' ');
        paragraph_begin = current.raw_text.size();
        paragraph_open = true;
        saw_paragraph_tag = true;
    };
    auto close_paragraph = [&]() {
        Span span = trim_span(current.raw_text, paragraph_begin, current.raw_text.size());
        if (!span.empty())
            current.paragraphs.push_back(span);
        current.raw_text.push_back(' ');
        paragraph_open = false;
    };

    std::size_t i = 0;
    while (i < buffer.size()) {
        if (buffer[i] != '<') {
            std::size_t j = buffer.find('<', i);
            if (j == std::string_view::npos)
                j = buffer.size();
            if (in_doc) {
                if (in_docno)
                    docno_text.append(buffer.substr(i, j - i));
                else
                    current.raw_text.append(buffer.substr(i, j - i));
            }
            i = j;
            continue;
        }
        Tag tag;
        if (!scan_tag(buffer, i, tag)) {
            // Literal '<'.
            if (in_doc && !in_docno)
                current.raw_text.push_back('<');
            else if (in_docno)
                docno_text.push_back('<');
            ++i;
            continue;
        }
        if (tag.name == "doc") {
            if (!tag.closing) {
                if (in_doc)
                    throw ParseError("unbalanced <DOC> at byte " + std::to_string(i));
                in_doc = true;
                in_docno = false;
                saw_paragraph_tag = false;
                paragraph_open = false;
                doc_start_offset = i;
                current = Document{};
                docno_text.clear();
                docno_count = 0;
            } else {
                if (!in_doc)
                    throw ParseError("unbalanced </DOC> at byte " + std::to_string(i));
                if (paragraph_open)
                    close_paragraph();
                if (docno_count != 1)
                    throw ParseError("DOC block at byte " + std::to_string(doc_start_offset) +
                                     (docno_count == 0 ? " has no DOCNO" : " has multiple DOCNOs"));
                current.doc_id = std::string(trim_view(docno_text));
                if (current.doc_id.empty())
                    throw ParseError("DOC block at byte " + std::to_string(doc_start_offset) +
                                     " has an empty DOCNO");
                if (!seen_ids.insert(current.doc_id).second)
                    throw ValidationError("duplicate doc_id '" + current.doc_id + "' at byte " +
                                          std::to_string(i));
                if (!saw_paragraph_tag) {
                    Span body = trim_span(current.raw_text, 0, current.raw_text.size());
                    current.paragraphs.clear();
                    if (!body.empty())
                        current.paragraphs.push_back(body);
                }
                docs.push_back(std::move(current));
                in_doc = false;
            }
        } else if (tag.name == "docno") {
            if (in_doc) {
                if (!tag.closing) {
                    in_docno = true;
                    ++docno_count;
                } else {
                    in_docno = false;
                }
                current.raw_text.push_back(' ');
            }
        } else if (in_doc && !in_docno && paragraph_tags.contains(tag.name)) {
            if (!tag.closing) {
                if (paragraph_open)
                    close_paragraph(); // paragraph elements do not nest
                open_paragraph();
            } else if (paragraph_open) {
                close_paragraph();
            } else {
                saw_paragraph_tag = true; // stray closer still marks tagged markup
                current.raw_text.push_back(' ');
            }
        } else {
            // Unknown tag: strip it, keep words on both sides separated.
            if (in_doc && !in_docno)
                current.raw_text.push_back(' ');
        }
        i = tag.next;
    }
    if (in_doc)
        throw ParseError("unbalanced <DOC> at byte " + std::to_string(doc_start_offset) +
                         ": no closing </DOC>");
    return docs;
}

std::vector<Document> parse_trec_corpus(std::istream& in,
                                        const ParagraphTagSet& paragraph_tags) {
    std::string buffer = slurp(in);
    return parse_trec_corpus(std::string_view(buffer), paragraph_tags);
}

// ---------------------------------------------------------------------------
// JSONL corpus

std::vector<Document> parse_jsonl_corpus(std::istream& in) {
    std::vector<Document> docs;
    std::unordered_map<std::string, std::size_t> seen; // id -> line
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty())
            continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("jsonl line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!record.is_object() || !record.contains("id") || !record["id"].is_string())
            throw ParseError("jsonl line " + std::to_string(line_no) +
                             ": record needs a string 'id'");
        Document doc;
        doc.doc_id = record["id"].get<std::string>();
        if (doc.doc_id.empty())
            throw ParseError("jsonl line " + std::to_string(line_no) + ": empty 'id'");
        if (seen.count(doc.doc_id))
            throw ValidationError("jsonl line " + std::to_string(line_no) +
                                  ": duplicate id '" + doc.doc_id + "'");
        seen[doc.doc_id] = line_no;

        if (record.contains("paragraphs")) {
            if (!record["paragraphs"].is_array())
                throw ParseError("jsonl line " + std::to_string(line_no) +
                                 ": 'paragraphs' must be an array of strings");
            bool first = true;
            for (const auto& p : record["paragraphs"]) {
                if (!p.is_string())
                    throw ParseError("jsonl line " + std::to_string(line_no) +
                                     ": 'paragraphs' must be an array of strings");
                if (!first)
                    doc.raw_text += "\n\n";
                first = false;
                std::size_t begin = doc.raw_text.size();
                doc.raw_text += p.get<std::string>();
                Span span = trim_span(doc.raw_text, begin, doc.raw_text.size());
                if (!span.empty())
                    doc.paragraphs.push_back(span);
            }
        } else {
            if (record.contains("text")) {
                if (!record["text"].is_string())
                    throw ParseError("jsonl line " + std::to_string(line_no) +
                                     ": 'text' must be a string");
                doc.raw_text = record["text"].get<std::string>();
            }
            Span span = trim_span(doc.raw_text, 0, doc.raw_text.size());
            if (!span.empty())
                doc.paragraphs.push_back(span);
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

// ---------------------------------------------------------------------------
// Run files

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> cols;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        std::size_t b = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > b)
            cols.emplace_back(line.substr(b, i - b));
    }
    return cols;
}

bool parse_int(const std::string& s, long& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtol(s.c_str(), &end, 10);
    return errno == 0 && end && *end == '\0' && end != s.c_str();
}

bool parse_double(const std::string& s, double& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end && *end == '\0' && end != s.c_str();
}

struct RunQueryState {
    int last_rank = 0;
    double last_score = 0.0;
};

void check_run_entry(const RunEntry& e, std::unordered_map<std::string, RunQueryState>& states,
                     const std::string& where) {
    if (e.rank < 1)
        throw ValidationError(where + ": rank must be positive");
    auto [it, fresh] = states.try_emplace(e.query_id);
    RunQueryState& st = it->second;
    if (e.rank != st.last_rank + 1)
        throw ValidationError(where + ": query " + e.query_id + " expected rank " +
                              std::to_string(st.last_rank + 1) + ", got " +
                              std::to_string(e.rank));
    if (!fresh && e.score > st.last_score)
        throw ValidationError(where + ": query " + e.query_id +
                              " has a score increasing with rank");
    st.last_rank = e.rank;
    st.last_score = e.score;
}

} // namespace

std::vector<RunEntry> parse_run_file(std::istream& in) {
    std::vector<RunEntry> entries;
    std::unordered_map<std::string, RunQueryState> states;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim_view(line);
        if (t.empty() || t.front() == '#')
            continue;
        auto cols = split_ws(line);
        std::string where = "run line " + std::to_string(line_no);
        if (cols.size() != 6)
            throw ParseError(where + ": expected 6 columns, got " + std::to_string(cols.size()));
        long rank = 0;
        double score = 0.0;
        if (!parse_int(cols[3], rank))
            throw ParseError(where + ": non-numeric rank '" + cols[3] + "'");
        if (!parse_double(cols[4], score))
            throw ParseError(where + ": non-numeric score '" + cols[4] + "'");
        RunEntry e{cols[0], cols[2], static_cast<int>(rank), score, cols[5]};
        check_run_entry(e, states, where);
        entries.push_back(std::move(e));
    }
    return entries;
}

Qrels parse_qrels(std::istream& in, bool binarize_any_positive) {
    // Collapse repeated (query, doc) lines to the maximum grade first.
    std::map<std::string, std::map<std::string, int>> max_grade;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim_view(line);
        if (t.empty() || t.front() == '#')
            continue;
        auto cols = split_ws(line);
        std::string where = "qrels line " + std::to_string(line_no);
        if (cols.size() != 4)
            throw ParseError(where + ": expected 4 columns, got " + std::to_string(cols.size()));
        long grade = 0;
        if (!parse_int(cols[3], grade))
            throw ParseError(where + ": non-numeric grade '" + cols[3] + "'");
        if (grade < 0)
            throw ValidationError(where + ": negative grade");
        int& slot = max_grade[cols[0]][cols[2]];
        slot = std::max(slot, static_cast<int>(grade));
    }
    Qrels qrels;
    for (const auto& [q, docs] : max_grade)
        for (const auto& [d, g] : docs)
            qrels.set(q, d, g);
    return binarize_any_positive ? qrels.binarized() : qrels;
}

std::vector<Topic> parse_topics(std::istream& in) {
    std::vector<Topic> topics;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim_view(line);
        if (t.empty() || t.front() == '#')
            continue;
        std::size_t tab = line.find('\t');
        std::string where = "topics line " + std::to_string(line_no);
        if (tab == std::string::npos)
            throw ParseError(where + ": expected query_id TAB query_text");
        Topic topic;
        topic.query_id = std::string(trim_view(std::string_view(line).substr(0, tab)));
        topic.query_text = std::string(trim_view(std::string_view(line).substr(tab + 1)));
        if (topic.query_id.empty())
            throw ParseError(where + ": empty query_id");
        if (topic.query_text.empty())
            throw ValidationError(where + ": empty query_text");
        if (!seen.insert(topic.query_id).second)
            throw ValidationError(where + ": duplicate query_id '" + topic.query_id + "'");
        topics.push_back(std::move(topic));
    }
    return topics;
}

std::string format_run_score(double score) {
    char buf[64];
    double mag = std::abs(score);
    if (score != 0.0 && mag < 1e-4) {
        // Fixed notation would need absurd widths; scientific keeps at least
        // nine significant digits and exact re-parse.
        for (int prec = 8; prec <= 17; ++prec) {
            std::snprintf(buf, sizeof buf, "%.*e", prec, score);
            if (std::strtod(buf, nullptr) == score)
                return buf;
        }
    } else {
        for (int prec = 6; prec <= 20; ++prec) {
            std::snprintf(buf, sizeof buf, "%.*f", prec, score);
            if (std::strtod(buf, nullptr) == score)
                return buf;
        }
    }
    std::snprintf(buf, sizeof buf, "%.17g", score);
    return buf;
}

void write_run_file(const std::vector<RunEntry>& entries, std::ostream& out) {
    std::unordered_map<std::string, RunQueryState> states;
    for (std::size_t i = 0; i < entries.size(); ++i)
        check_run_entry(entries[i], states, "run entry " + std::to_string(i + 1));
    for (const auto& e : entries)
        out << e.query_id << " Q0 " << e.doc_id << ' ' << e.rank << ' '
            << format_run_score(e.score) << ' ' << e.run_tag << '\n';
}

// ---------------------------------------------------------------------------
// File reading with gzip support

std::string read_file_auto(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        throw ParseError("cannot open '" + path + "'");
    unsigned char magic[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(magic), 2);
    bool gz = probe.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
    probe.close();

    if (!gz && path.size() < 3)
        gz = false;
    if (!gz && path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0)
        gz = true;

    if (!gz) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    gzFile f = gzopen(path.c_str(), "rb");
    if (!f)
        throw ParseError("cannot open gzip file '" + path + "'");
    std::string out;
    char chunk[1 << 16];
    int n = 0;
    while ((n = gzread(f, chunk, sizeof chunk)) > 0)
        out.append(chunk, static_cast<std::size_t>(n));
    bool bad = n < 0;
    gzclose(f);
    if (bad)
        throw ParseError("gzip read error in '" + path + "'");
    return out;
}

} // namespace graphrank
