#include "graphrank/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace graphrank {

WindowPolicy WindowPolicy::fixed(int k) {
    if (k < 2)
        throw ValidationError("fixed window k must be >= 2, got " + std::to_string(k));
    return WindowPolicy{Kind::Fixed, k};
}

WindowPolicy WindowPolicy::parse(const std::string& name) {
    if (name == "sentence")
        return sentence();
    if (name == "paragraph")
        return paragraph();
    std::string_view v(name);
    if (v.substr(0, 5) == "fixed") {
        v.remove_prefix(5);
        if (!v.empty() && v.front() == ':')
            v.remove_prefix(1);
        char* end = nullptr;
        std::string num(v);
        long k = std::strtol(num.c_str(), &end, 10);
        if (!num.empty() && end && *end == '\0')
            return fixed(static_cast<int>(k));
    }
    throw ValidationError("unknown window policy '" + name +
                          "' (expected fixed<k>, sentence or paragraph)");
}

std::string WindowPolicy::name() const {
    switch (kind) {
    case Kind::Fixed:
        return "fixed" + std::to_string(k);
    case Kind::Sentence:
        return "sentence";
    case Kind::Paragraph:
        return "paragraph";
    }
    return "?";
}

TermGraph::TermGraph(std::string doc_id, std::vector<std::string> sorted_stems,
                     std::vector<std::vector<std::uint32_t>> adjacency)
    : doc_id_(std::move(doc_id)), stems_(std::move(sorted_stems)),
      adjacency_(std::move(adjacency)) {
    for (const auto& nbrs : adjacency_)
        edge_count_ += nbrs.size();
    edge_count_ /= 2;
}

std::optional<std::uint32_t> TermGraph::vertex_id(std::string_view stem) const {
    auto it = std::lower_bound(stems_.begin(), stems_.end(), stem);
    if (it == stems_.end() || *it != stem)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - stems_.begin());
}

bool TermGraph::has_edge(std::string_view a, std::string_view b) const {
    auto ia = vertex_id(a);
    auto ib = vertex_id(b);
    if (!ia || !ib)
        return false;
    const auto& nbrs = adjacency_[*ia];
    return std::binary_search(nbrs.begin(), nbrs.end(), *ib);
}

namespace {

// Unordered pair packed with the smaller id in the high word.
std::uint64_t pack_edge(std::uint32_t a, std::uint32_t b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

TermGraph build_graph(const SegmentedDocument& doc, const WindowPolicy& policy,
                      const GraphOptions& opts) {
    if (policy.kind == WindowPolicy::Kind::Fixed && policy.k < 2)
        throw ValidationError("fixed window k must be >= 2, got " + std::to_string(policy.k));

    // Vertex set: distinct stems, sorted.
    std::vector<std::string> stems;
    stems.reserve(doc.tokens.size());
    for (const Token& t : doc.tokens)
        stems.push_back(t.stem);
    std::sort(stems.begin(), stems.end());
    stems.erase(std::unique(stems.begin(), stems.end()), stems.end());

    std::unordered_map<std::string_view, std::uint32_t> id_of;
    id_of.reserve(stems.size());
    for (std::uint32_t i = 0; i < stems.size(); ++i)
        id_of.emplace(stems[i], i);

    std::vector<std::uint32_t> token_vertex(doc.tokens.size());
    for (std::size_t i = 0; i < doc.tokens.size(); ++i)
        token_vertex[i] = id_of.at(doc.tokens[i].stem);

    std::unordered_set<std::uint64_t> edges;
    auto add_edge = [&](std::uint32_t a, std::uint32_t b) {
        if (a != b)
            edges.insert(pack_edge(a, b));
    };

    const auto& tokens = doc.tokens;
    if (policy.kind == WindowPolicy::Kind::Fixed) {
        std::size_t reach = static_cast<std::size_t>(policy.k) - 1;
        for (std::size_t p = 0; p < tokens.size(); ++p) {
            std::size_t limit = std::min(tokens.size(), p + reach + 1);
            for (std::size_t q = p + 1; q < limit; ++q) {
                if (opts.fixed_window_respects_sentences &&
                    tokens[p].sentence_idx != tokens[q].sentence_idx)
                    break; // sentence_idx is non-decreasing with position
                add_edge(token_vertex[p], token_vertex[q]);
            }
        }
    } else {
        // Group token runs by unit index; each unit contributes the complete
        // graph over its distinct stems.
        const bool by_sentence = policy.kind == WindowPolicy::Kind::Sentence;
        std::size_t begin = 0;
        std::vector<std::uint32_t> unit_vertices;
        while (begin < tokens.size()) {
            std::uint32_t unit = by_sentence ? tokens[begin].sentence_idx
                                             : tokens[begin].paragraph_idx;
            std::size_t end = begin;
            while (end < tokens.size() &&
                   (by_sentence ? tokens[end].sentence_idx : tokens[end].paragraph_idx) == unit)
                ++end;
            unit_vertices.assign(token_vertex.begin() + static_cast<std::ptrdiff_t>(begin),
                                 token_vertex.begin() + static_cast<std::ptrdiff_t>(end));
            std::sort(unit_vertices.begin(), unit_vertices.end());
            unit_vertices.erase(std::unique(unit_vertices.begin(), unit_vertices.end()),
                                unit_vertices.end());
            for (std::size_t a = 0; a < unit_vertices.size(); ++a)
                for (std::size_t b = a + 1; b < unit_vertices.size(); ++b)
                    add_edge(unit_vertices[a], unit_vertices[b]);
            begin = end;
        }
    }

    std::vector<std::vector<std::uint32_t>> adjacency(stems.size());
    for (std::uint64_t e : edges) {
        auto a = static_cast<std::uint32_t>(e >> 32);
        auto b = static_cast<std::uint32_t>(e & 0xffffffffu);
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    for (auto& nbrs : adjacency)
        std::sort(nbrs.begin(), nbrs.end());

    return TermGraph(doc.doc_id, std::move(stems), std::move(adjacency));
}

GraphStats graph_stats(const TermGraph& g) {
    GraphStats s;
    s.vertex_count = g.vertex_count();
    s.edge_count = g.edge_count();
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            ++s.isolated_vertex_count;
    s.mean_degree = s.vertex_count == 0
                        ? 0.0
                        : 2.0 * static_cast<double>(s.edge_count) /
                              static_cast<double>(s.vertex_count);
    return s;
}

void write_edge_list(const TermGraph& g, std::ostream& out) {
    // Vertices are sorted, so ascending (id, neighbor-id) order is already
    // lexicographic by stem pair.
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        for (std::uint32_t n : g.neighbors(v))
            if (v < n)
                out << g.stem(v) << '\t' << g.stem(n) << '\n';
}

} // namespace graphrank
