#ifndef GRAPHRANK_TEXTRANK_HPP_
#define GRAPHRANK_TEXTRANK_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graphrank/graph.hpp"

namespace graphrank {

struct RankConfig {
    double damping = 0.85;
    int iterations = 200;
    double initial_score = 1.0;

    void validate() const;
};

// Converged per-term scores for one document. Entries are sorted by stem.
class TermWeights {
public:
    TermWeights() = default;
    TermWeights(std::string doc_id, std::vector<std::pair<std::string, double>> sorted_scores)
        : doc_id_(std::move(doc_id)), scores_(std::move(sorted_scores)) {}

    const std::string& doc_id() const { return doc_id_; }
    std::size_t size() const { return scores_.size(); }
    std::optional<double> score(std::string_view stem) const;
    const std::vector<std::pair<std::string, double>>& entries() const { return scores_; }

private:
    std::string doc_id_;
    std::vector<std::pair<std::string, double>> scores_;
};

// Synchronous (Jacobi) iteration of
//
//   s(v) <- (1 - damping) + damping * sum over neighbors u of s(u) / deg(u)
//
// run for exactly cfg.iterations sweeps, every update reading the previous
// sweep's scores. The per-neighbor division is by the neighbor's degree,
// which is >= 1 for anything that appears in a neighbor list, so no division
// by zero is possible; isolated vertices settle at (1 - damping) after the
// first sweep. Neighbor sums accumulate in ascending vertex id order, i.e.
// lexicographic stem order, which makes results bit-reproducible and
// independent of any enumeration order.
TermWeights textrank(const TermGraph& g, const RankConfig& cfg = {});

// One extra synchronous sweep on top of existing weights; used for
// fixed-point verification. Throws ValidationError if the weights do not
// cover the graph's vertices.
TermWeights textrank_sweep(const TermGraph& g, const TermWeights& weights,
                           const RankConfig& cfg = {});

// max over vertices of |a - b|; ValidationError on key mismatch.
double residual(const TermGraph& g, const TermWeights& a, const TermWeights& b);

// "doc_id TAB stem TAB score" with 9 decimal digits, rows sorted by
// (doc_id, stem). Lines starting with '#' carry the config header and are
// skipped on read.
void write_weights_tsv(const std::vector<TermWeights>& weights, std::ostream& out,
                       const std::vector<std::string>& header_lines = {});

struct WeightsFile {
    std::vector<std::string> header_lines; // without the leading "# "
    std::vector<TermWeights> weights;      // sorted by doc_id
};

WeightsFile read_weights_tsv(std::istream& in);

} // namespace graphrank

#endif // GRAPHRANK_TEXTRANK_HPP_
