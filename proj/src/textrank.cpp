#include "graphrank/textrank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace graphrank {

void RankConfig::validate() const {
    if (!(damping >= 0.0 && damping <= 1.0))
        throw ValidationError("damping must lie in [0, 1]");
    if (iterations < 1)
        throw ValidationError("iterations must be >= 1");
    if (!std::isfinite(initial_score))
        throw ValidationError("initial_score must be finite");
}

std::optional<double> TermWeights::score(std::string_view stem) const {
    auto it = std::lower_bound(scores_.begin(), scores_.end(), stem,
                               [](const auto& entry, std::string_view key) {
                                   return entry.first < key;
                               });
    if (it == scores_.end() || it->first != stem)
        return std::nullopt;
    return it->second;
}

namespace {

std::vector<double> reciprocal_degrees(const TermGraph& g) {
    std::vector<double> inv(g.vertex_count(), 0.0);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > 0)
            inv[v] = 1.0 / static_cast<double>(g.degree(v));
    return inv;
}

void sweep(const TermGraph& g, double damping, const std::vector<double>& inv_deg,
           const std::vector<double>& cur, std::vector<double>& next) {
    const double base = 1.0 - damping;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        double sum = 0.0;
        for (std::uint32_t u : g.neighbors(v)) // ascending id = lexicographic
            sum += cur[u] * inv_deg[u];
        next[v] = base + damping * sum;
    }
}

TermWeights to_weights(const TermGraph& g, const std::vector<double>& scores) {
    std::vector<std::pair<std::string, double>> entries;
    entries.reserve(g.vertex_count());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        entries.emplace_back(g.stem(v), scores[v]);
    return TermWeights(g.doc_id(), std::move(entries));
}

std::vector<double> from_weights(const TermGraph& g, const TermWeights& w,
                                 const char* what) {
    std::vector<double> scores(g.vertex_count());
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        auto s = w.score(g.stem(v));
        if (!s)
            throw ValidationError(std::string(what) + ": no score for vertex '" + g.stem(v) +
                                  "'");
        scores[v] = *s;
    }
    if (w.size() != g.vertex_count())
        throw ValidationError(std::string(what) + ": weights cover " +
                              std::to_string(w.size()) + " stems, graph has " +
                              std::to_string(g.vertex_count()));
    return scores;
}

} // namespace

TermWeights textrank(const TermGraph& g, const RankConfig& cfg) {
    cfg.validate();
    std::vector<double> cur(g.vertex_count(), cfg.initial_score);
    std::vector<double> next(g.vertex_count());
    std::vector<double> inv_deg = reciprocal_degrees(g);
    for (int it = 0; it < cfg.iterations; ++it) {
        sweep(g, cfg.damping, inv_deg, cur, next);
        cur.swap(next);
    }
    return to_weights(g, cur);
}

TermWeights textrank_sweep(const TermGraph& g, const TermWeights& weights,
                           const RankConfig& cfg) {
    cfg.validate();
    std::vector<double> cur = from_weights(g, weights, "textrank_sweep");
    std::vector<double> next(g.vertex_count());
    std::vector<double> inv_deg = reciprocal_degrees(g);
    sweep(g, cfg.damping, inv_deg, cur, next);
    return to_weights(g, next);
}

double residual(const TermGraph& g, const TermWeights& a, const TermWeights& b) {
    std::vector<double> va = from_weights(g, a, "residual");
    std::vector<double> vb = from_weights(g, b, "residual");
    double r = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i)
        r = std::max(r, std::abs(va[i] - vb[i]));
    return r;
}

void write_weights_tsv(const std::vector<TermWeights>& weights, std::ostream& out,
                       const std::vector<std::string>& header_lines) {
    for (const auto& line : header_lines)
        out << "# " << line << '\n';
    std::vector<const TermWeights*> order;
    order.reserve(weights.size());
    for (const auto& w : weights)
        order.push_back(&w);
    std::sort(order.begin(), order.end(), [](const TermWeights* a, const TermWeights* b) {
        return a->doc_id() < b->doc_id();
    });
    char buf[64];
    for (const TermWeights* w : order) {
        for (const auto& [stem, score] : w->entries()) {
            std::snprintf(buf, sizeof buf, "%.9f", score);
            out << w->doc_id() << '\t' << stem << '\t' << buf << '\n';
        }
    }
}

WeightsFile read_weights_tsv(std::istream& in) {
    WeightsFile file;
    std::string line;
    std::size_t line_no = 0;
    std::string cur_doc;
    std::vector<std::pair<std::string, double>> cur_scores;
    auto flush = [&]() {
        if (!cur_doc.empty()) {
            // TermWeights lookup needs stem order; written files already are.
            std::sort(cur_scores.begin(), cur_scores.end());
            file.weights.emplace_back(cur_doc, std::move(cur_scores));
            cur_scores = {};
        }
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            file.header_lines.push_back(line.substr(start));
            continue;
        }
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParseError("weights line " + std::to_string(line_no) +
                             ": expected doc_id TAB stem TAB score");
        std::string doc = line.substr(0, t1);
        std::string stem = line.substr(t1 + 1, t2 - t1 - 1);
        char* end = nullptr;
        std::string num = line.substr(t2 + 1);
        double score = std::strtod(num.c_str(), &end);
        if (num.empty() || !end || *end != '\0')
            throw ParseError("weights line " + std::to_string(line_no) +
                             ": non-numeric score '" + num + "'");
        if (doc != cur_doc) {
            flush();
            cur_doc = doc;
        }
        cur_scores.emplace_back(std::move(stem), score);
    }
    flush();
    return file;
}

} // namespace graphrank
