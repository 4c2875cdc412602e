// Test-only oracles, deliberately independent of the library's code paths:
// a dense Gaussian-elimination solve of the rank fixed point, an O(n^2)
// window edge enumerator, and small deterministic generators.
#ifndef GRAPHRANK_TESTS_ORACLE_HELPERS_HPP_
#define GRAPHRANK_TESTS_ORACLE_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12)
            throw std::runtime_error("singular system in test oracle");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

// Exact fixed point of s = (1-d) 1 + d M s with M[i][j] = adj[i][j] / deg(j):
// solve (I - d M) s = (1 - d) 1.
inline std::vector<double> exact_rank(const std::vector<std::vector<int>>& adj, double damping) {
    const std::size_t n = adj.size();
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            deg[i] += adj[i][j];
    Matrix a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 1.0 - damping);
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            if (adj[i][j] && deg[j] > 0)
                a[i][j] -= damping / static_cast<double>(deg[j]);
    }
    return solve_linear(std::move(a), std::move(b));
}

using EdgeSet = std::set<std::pair<std::string, std::string>>;

inline void insert_edge(EdgeSet& edges, std::string a, std::string b) {
    if (a == b)
        return;
    if (b < a)
        std::swap(a, b);
    edges.emplace(std::move(a), std::move(b));
}

// Double loop over token positions: edge iff 0 < |p - q| < k.
inline EdgeSet brute_force_fixed_edges(const std::vector<std::string>& stems, int k) {
    EdgeSet edges;
    for (std::size_t p = 0; p < stems.size(); ++p)
        for (std::size_t q = 0; q < stems.size(); ++q) {
            if (p == q)
                continue;
            std::size_t dist = p > q ? p - q : q - p;
            if (dist < static_cast<std::size_t>(k))
                insert_edge(edges, stems[p], stems[q]);
        }
    return edges;
}

// All pairs sharing a unit id.
inline EdgeSet brute_force_unit_edges(const std::vector<std::string>& stems,
                                      const std::vector<int>& unit_of) {
    EdgeSet edges;
    for (std::size_t p = 0; p < stems.size(); ++p)
        for (std::size_t q = p + 1; q < stems.size(); ++q)
            if (unit_of[p] == unit_of[q])
                insert_edge(edges, stems[p], stems[q]);
    return edges;
}

// Random undirected graph as an adjacency matrix; optionally forced
// connected via a random spanning tree.
inline std::vector<std::vector<int>> random_graph(std::mt19937& rng, std::size_t n,
                                                  double edge_prob, bool force_connected) {
    std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
    std::bernoulli_distribution coin(edge_prob);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng))
                adj[i][j] = adj[j][i] = 1;
    if (force_connected && n > 1) {
        for (std::size_t v = 1; v < n; ++v) {
            std::uniform_int_distribution<std::size_t> pick(0, v - 1);
            std::size_t u = pick(rng);
            adj[u][v] = adj[v][u] = 1;
        }
    }
    return adj;
}

// Kendall tau between two orderings of the same item set; 1 = identical.
inline double kendall_tau(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t n = a.size();
    if (n < 2 || b.size() != n)
        throw std::runtime_error("kendall_tau: need two equal orderings");
    auto rank_of = [](const std::vector<std::string>& v) {
        std::vector<std::pair<std::string, std::size_t>> idx;
        for (std::size_t i = 0; i < v.size(); ++i)
            idx.emplace_back(v[i], i);
        std::sort(idx.begin(), idx.end());
        return idx;
    };
    auto ra = rank_of(a);
    auto rb = rank_of(b);
    std::vector<std::size_t> pos_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ra[i].first != rb[i].first)
            throw std::runtime_error("kendall_tau: item sets differ");
        pos_b[ra[i].second] = rb[i].second;
    }
    long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            (pos_b[i] < pos_b[j] ? concordant : discordant)++;
    return static_cast<double>(concordant - discordant) /
           (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

} // namespace oracle

#endif // GRAPHRANK_TESTS_ORACLE_HELPERS_HPP_
