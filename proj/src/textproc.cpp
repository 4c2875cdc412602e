#include "graphrank/textproc.hpp"

#include <cctype>
#include <istream>

#include "graphrank/porter.hpp"

namespace graphrank {

namespace {

bool is_token_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_upper(unsigned char c) {
    return std::isupper(c) != 0;
}

} // namespace

std::vector<SurfaceToken> tokenize(std::string_view text) {
    std::vector<SurfaceToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_token_char(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t begin = i;
        while (i < text.size() && is_token_char(static_cast<unsigned char>(text[i])))
            ++i;
        SurfaceToken tok;
        tok.source = Span{begin, i};
        tok.text.reserve(i - begin);
        for (std::size_t p = begin; p < i; ++p)
            tok.text.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(text[p]))));
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

const std::set<std::string>& default_abbreviations() {
    static const std::set<std::string> abbrevs = {
        "al",   "approx", "ca",   "cf",  "co",  "corp", "dept", "dr",  "ed",
        "eds",  "eg",     "etc",  "fig", "figs", "gen",  "gov",  "ie",  "inc",
        "jr",   "ltd",    "mr",   "mrs", "ms",  "mt",   "no",   "pp",  "prof",
        "rep",  "rev",    "sen",  "sr",  "st",  "univ", "vol",  "vols", "vs"};
    return abbrevs;
}

std::set<std::string> load_abbreviations(std::istream& in) {
    std::set<std::string> abbrevs;
    std::string line;
    while (std::getline(in, line)) {
        std::string word;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c)))
                continue;
            word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        if (!word.empty() && word[0] != '#')
            abbrevs.insert(word);
    }
    return abbrevs;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> stops = {
        "a",     "about", "after", "all",   "also",  "an",    "and",   "any",
        "are",   "as",    "at",    "be",    "been",  "but",   "by",    "can",
        "could", "did",   "do",    "for",   "from",  "had",   "has",   "have",
        "he",    "her",   "his",   "if",    "in",    "into",  "is",    "it",
        "its",   "may",   "more",  "most",  "no",    "not",   "of",    "on",
        "or",    "our",   "she",   "so",    "some",  "such",  "than",  "that",
        "the",   "their", "them",  "then",  "there", "these", "they",  "this",
        "to",    "was",   "we",    "were",  "what",  "when",  "which", "who",
        "will",  "with",  "would", "you"};
    return stops;
}

namespace {

// The maximal run of ASCII letters ending just before position `at`.
std::string_view word_before(std::string_view text, std::size_t at) {
    std::size_t end = at;
    std::size_t begin = end;
    while (begin > 0 && std::isalpha(static_cast<unsigned char>(text[begin - 1])))
        --begin;
    return text.substr(begin, end - begin);
}

bool blocked_by_abbreviation(std::string_view text, std::size_t dot,
                             const std::set<std::string>& abbreviations) {
    std::string_view word = word_before(text, dot);
    if (word.empty())
        return false;
    // A single uppercase letter is an initial: "J. Smith".
    if (word.size() == 1 && is_upper(static_cast<unsigned char>(word[0])))
        return true;
    std::string lower;
    lower.reserve(word.size());
    for (char c : word)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return abbreviations.count(lower) != 0;
}

// True when a blank line (>= 2 newlines separated only by spaces/tabs)
// starts within [i, end).
std::size_t blank_line_end(std::string_view text, std::size_t i) {
    std::size_t newlines = 0;
    std::size_t p = i;
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) {
        if (text[p] == '\n')
            ++newlines;
        ++p;
    }
    return newlines >= 2 ? p : 0;
}

} // namespace

std::vector<Span> split_sentences(std::string_view text) {
    return split_sentences(text, default_abbreviations());
}

std::vector<Span> split_sentences(std::string_view text,
                                  const std::set<std::string>& abbreviations) {
    std::vector<Span> spans;
    std::size_t sent_begin = std::string_view::npos; // first non-ws of current sentence
    std::size_t last_nonws = 0;

    auto flush = [&]() {
        if (sent_begin != std::string_view::npos) {
            spans.push_back(Span{sent_begin, last_nonws + 1});
            sent_begin = std::string_view::npos;
        }
    };

    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            std::size_t after_blank = blank_line_end(text, i);
            if (after_blank != 0) {
                flush();
                i = after_blank;
                continue;
            }
            ++i;
            continue;
        }
        if (sent_begin == std::string_view::npos)
            sent_begin = i;
        last_nonws = i;
        if (c == '.' || c == '!' || c == '?') {
            bool guard = c == '.' && blocked_by_abbreviation(text, i, abbreviations);
            if (!guard) {
                // Boundary when whitespace (or end of text) follows; "3.14"
                // stays whole because a digit follows directly.
                std::size_t p = i + 1;
                bool boundary = p >= text.size() ||
                                std::isspace(static_cast<unsigned char>(text[p])) != 0;
                if (boundary) {
                    flush();
                    i = p;
                    continue;
                }
            }
        }
        ++i;
    }
    flush();
    return spans;
}

SegmentedDocument segment(const Document& doc, const SegmentOptions& opts) {
    SegmentedDocument out;
    out.doc_id = doc.doc_id;
    const std::set<std::string>& stops = default_stopwords();

    for (const Span& para : doc.paragraphs) {
        std::string_view para_text =
            std::string_view(doc.raw_text).substr(para.begin, para.size());
        bool paragraph_has_tokens = false;
        std::uint32_t paragraph_idx = static_cast<std::uint32_t>(out.paragraph_spans.size());

        for (const Span& sent : split_sentences(para_text)) {
            std::string_view sent_text = para_text.substr(sent.begin, sent.size());
            bool sentence_has_tokens = false;
            std::uint32_t sentence_idx = static_cast<std::uint32_t>(out.sentence_spans.size());
            for (SurfaceToken& surf : tokenize(sent_text)) {
                if (opts.remove_stopwords && stops.count(surf.text))
                    continue;
                Token tok;
                tok.stem = porter_stem(surf.text);
                tok.surface = std::move(surf.text);
                tok.position = static_cast<std::uint32_t>(out.tokens.size());
                tok.sentence_idx = sentence_idx;
                tok.paragraph_idx = paragraph_idx;
                out.tokens.push_back(std::move(tok));
                sentence_has_tokens = true;
            }
            if (sentence_has_tokens) {
                out.sentence_spans.push_back(
                    Span{para.begin + sent.begin, para.begin + sent.end});
                paragraph_has_tokens = true;
            }
        }
        if (paragraph_has_tokens)
            out.paragraph_spans.push_back(para);
    }
    return out;
}

std::vector<std::string> stem_query(std::string_view query_text, const SegmentOptions& opts) {
    std::vector<std::string> stems;
    const std::set<std::string>& stops = default_stopwords();
    for (const SurfaceToken& surf : tokenize(query_text)) {
        if (opts.remove_stopwords && stops.count(surf.text))
            continue;
        stems.push_back(porter_stem(surf.text));
    }
    return stems;
}

} // namespace graphrank
