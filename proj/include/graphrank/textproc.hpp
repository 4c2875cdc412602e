#ifndef GRAPHRANK_TEXTPROC_HPP_
#define GRAPHRANK_TEXTPROC_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "graphrank/common.hpp"
#include "graphrank/corpus_io.hpp"

namespace graphrank {

// Tokenization rule, pinned because corpus statistics depend on it: tokens
// are maximal runs of ASCII alphanumerics plus any byte >= 0x80 (multi-byte
// UTF-8 sequences stay inside one token), lowercased in the ASCII range.
// Bump the version whenever the rule changes; it goes into every config
// fingerprint.
inline constexpr const char* kTokenizerVersion = "alnum-v1";

struct SurfaceToken {
    std::string text; // lowercased
    Span source;      // byte range in the input string
};

struct Token {
    std::string surface;
    std::string stem;
    std::uint32_t position = 0;      // index in document token order
    std::uint32_t sentence_idx = 0;  // non-decreasing with position
    std::uint32_t paragraph_idx = 0; // non-decreasing with position
};

struct SegmentedDocument {
    std::string doc_id;
    std::vector<Token> tokens;
    // Source spans of the token-bearing units, indexed by
    // sentence_idx / paragraph_idx.
    std::vector<Span> sentence_spans;
    std::vector<Span> paragraph_spans;

    std::size_t sentence_count() const { return sentence_spans.size(); }
    std::size_t paragraph_count() const { return paragraph_spans.size(); }
};

struct SegmentOptions {
    bool remove_stopwords = false; // ablation only; default keeps every token
};

// Total function; "" gives an empty sequence. "top-1000" splits at the
// hyphen into ["top", "1000"].
std::vector<SurfaceToken> tokenize(std::string_view text);

// Sentence boundaries sit at '.', '!' or '?' followed by whitespace or end
// of text. A trailing single uppercase letter ("J.") or an entry of the
// abbreviation list ("dr.") does not end a sentence. Blank lines always
// break. Spans cover all non-whitespace text.
std::vector<Span> split_sentences(std::string_view text);
std::vector<Span> split_sentences(std::string_view text,
                                  const std::set<std::string>& abbreviations);

// The abbreviation list also shipped as data/abbreviations.txt.
const std::set<std::string>& default_abbreviations();
std::set<std::string> load_abbreviations(std::istream& in);

const std::set<std::string>& default_stopwords();

// Tokenizes and stems every paragraph span of the document. A paragraph
// boundary always forces a sentence boundary. Sentence and paragraph
// indices are dense over units that contain at least one token.
SegmentedDocument segment(const Document& doc, const SegmentOptions& opts = {});

// Queries go through the identical pipeline as documents.
std::vector<std::string> stem_query(std::string_view query_text,
                                    const SegmentOptions& opts = {});

} // namespace graphrank

#endif // GRAPHRANK_TEXTPROC_HPP_
