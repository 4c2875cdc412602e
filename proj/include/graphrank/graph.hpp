#ifndef GRAPHRANK_GRAPH_HPP_
#define GRAPHRANK_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphrank/textproc.hpp"

namespace graphrank {

// How far term co-occurrence reaches.
//
// Fixed(k) links the stems of tokens at positions p, q iff 0 < |p - q| < k,
// so k = 2 links consecutive words and k = 1 is rejected (it can produce no
// edge). By default fixed windows run straight across sentence and paragraph
// boundaries; that boundary-blindness is exactly what the dynamic policies
// remove. Sentence and Paragraph link every pair of distinct stems sharing a
// unit: the unit itself is the window.
struct WindowPolicy {
    enum class Kind { Fixed, Sentence, Paragraph };

    Kind kind = Kind::Fixed;
    int k = 5; // only meaningful for Fixed

    static WindowPolicy fixed(int k);
    static WindowPolicy sentence() { return WindowPolicy{Kind::Sentence, 0}; }
    static WindowPolicy paragraph() { return WindowPolicy{Kind::Paragraph, 0}; }

    // "fixed5", "fixed:7", "sentence", "paragraph"
    static WindowPolicy parse(const std::string& name);
    std::string name() const;

    bool operator==(const WindowPolicy&) const = default;
};

struct GraphOptions {
    // When set, Fixed(k) windows additionally require both tokens to share a
    // sentence. Off by default; kept to probe the boundary-crossing reading.
    bool fixed_window_respects_sentences = false;
};

// Per-document undirected co-occurrence graph over distinct stems.
// Vertices are sorted lexicographically; neighbor lists hold vertex ids in
// ascending (hence lexicographic) order. No self-loops, no edge weights:
// repeat co-occurrence adds nothing.
class TermGraph {
public:
    TermGraph() = default;
    TermGraph(std::string doc_id, std::vector<std::string> sorted_stems,
              std::vector<std::vector<std::uint32_t>> adjacency);

    const std::string& doc_id() const { return doc_id_; }
    std::size_t vertex_count() const { return stems_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& vertices() const { return stems_; }
    const std::string& stem(std::uint32_t id) const { return stems_[id]; }
    std::optional<std::uint32_t> vertex_id(std::string_view stem) const;

    const std::vector<std::uint32_t>& neighbors(std::uint32_t id) const {
        return adjacency_[id];
    }
    std::size_t degree(std::uint32_t id) const { return adjacency_[id].size(); }
    bool has_edge(std::string_view a, std::string_view b) const;

private:
    std::string doc_id_;
    std::vector<std::string> stems_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::size_t edge_count_ = 0;
};

struct GraphStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t isolated_vertex_count = 0;
    double mean_degree = 0.0;
};

// Throws ValidationError for Fixed(k) with k < 2.
TermGraph build_graph(const SegmentedDocument& doc, const WindowPolicy& policy,
                      const GraphOptions& opts = {});

GraphStats graph_stats(const TermGraph& g);

// Debug export: one "stemA\tstemB" line per edge with stemA < stemB, lines
// sorted, for diffing.
void write_edge_list(const TermGraph& g, std::ostream& out);

} // namespace graphrank

#endif // GRAPHRANK_GRAPH_HPP_
