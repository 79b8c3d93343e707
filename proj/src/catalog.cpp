#include "cpls/catalog.hpp"

#include <map>
#include <numeric>

#include "cpls/embedding.hpp"

namespace cpls {

namespace {

// graphs as bitmasks over vertex pairs (i<j), pair index i*(2n-i-1)/2 ...
int pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

uint64_t permute_mask(int n, uint64_t mask, const std::vector<int>& perm) {
    uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask & (1ull << pair_index(n, i, j)))
                out |= 1ull << pair_index(n, perm[i], perm[j]);
    return out;
}

bool mask_canonical(int n, uint64_t mask, const std::vector<std::vector<int>>& perms) {
    for (const auto& p : perms)
        if (permute_mask(n, mask, p) < mask) return false;
    return true;
}

bool mask_connected(int n, uint64_t mask) {
    if (n <= 1) return true;
    std::vector<int> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w) {
            if (w == v || seen[w]) continue;
            if (mask & (1ull << pair_index(n, v, w))) {
                seen[w] = 1;
                ++cnt;
                stack.push_back(w);
            }
        }
    }
    return cnt == n;
}

Graph mask_to_graph(int n, uint64_t mask) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mask & (1ull << pair_index(n, i, j))) g.add_edge(i, j);
    g.normalize();
    return g;
}

}  // namespace

std::vector<Graph> connected_graph_catalog(int n) {
    if (n < 1 || n > 7) throw std::runtime_error("connected_graph_catalog: 1 <= n <= 7");
    // canonical connected masks by vertex extension
    std::vector<std::vector<uint64_t>> level(n + 1);
    level[1] = {0};
    for (int k = 2; k <= n; ++k) {
        std::vector<int> base(k);
        std::iota(base.begin(), base.end(), 0);
        std::vector<std::vector<int>> perms;
        {
            std::vector<int> p = base;
            do {
                perms.push_back(p);
            } while (std::next_permutation(p.begin(), p.end()));
        }
        std::vector<uint64_t> seen;
        for (uint64_t prev : level[k - 1]) {
            // lift the (k-1)-mask into k-vertex indexing
            uint64_t lifted = 0;
            for (int i = 0; i < k - 1; ++i)
                for (int j = i + 1; j < k - 1; ++j)
                    if (prev & (1ull << pair_index(k - 1, i, j)))
                        lifted |= 1ull << pair_index(k, i, j);
            for (uint64_t nb = 1; nb < (1ull << (k - 1)); ++nb) {
                uint64_t mask = lifted;
                for (int i = 0; i < k - 1; ++i)
                    if (nb & (1ull << i)) mask |= 1ull << pair_index(k, i, k - 1);
                if (!mask_connected(k, mask)) continue;
                // canonicalize
                uint64_t best = mask;
                for (const auto& p : perms) best = std::min(best, permute_mask(k, mask, p));
                seen.push_back(best);
            }
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        level[k] = std::move(seen);
    }
    std::vector<Graph> out;
    for (uint64_t m : level[n]) out.push_back(mask_to_graph(n, m));
    return out;
}

std::vector<Graph> connected_planar_catalog(int n) {
    std::vector<Graph> out;
    for (Graph& g : connected_graph_catalog(n))
        if (is_planar(g)) out.push_back(std::move(g));
    return out;
}

std::optional<std::vector<int>> bipartition_of(const Graph& g) {
    std::vector<int> col(g.num_vertices(), -1);
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
        if (col[s] != -1) continue;
        col[s] = 0;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (col[w] == -1) {
                    col[w] = col[v] ^ 1;
                    stack.push_back(w);
                } else if (col[w] == col[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return col;
}

}  // namespace cpls
