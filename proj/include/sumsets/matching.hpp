#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace sumsets {

/// Bipartite maximum matching (augmenting paths). Left vertices 0..nl-1,
/// right vertices 0..nr-1, adj[l] = right neighbours of l.
class BipartiteMatcher {
public:
    BipartiteMatcher(size_t nl, size_t nr, std::vector<std::vector<int>> adj)
        : nl_(nl), nr_(nr), adj_(std::move(adj)), match_l_(nl, -1), match_r_(nr, -1) {}

    size_t solve() {
        size_t matched = 0;
        std::vector<char> seen(nr_);
        for (size_t l = 0; l < nl_; ++l) {
            std::fill(seen.begin(), seen.end(), 0);
            if (try_augment(static_cast<int>(l), seen)) ++matched;
        }
        return matched;
    }

    const std::vector<int>& match_of_left() const { return match_l_; }

    /// After solve(): if some left vertex is unmatched, return a Hall
    /// violator, i.e. a left set S with |N(S)| < |S| (alternating-tree
    /// closure of an unmatched vertex). nullopt when the matching
    /// saturates the left side.
    std::optional<std::vector<int>> hall_violator() const {
        int start = -1;
        for (size_t l = 0; l < nl_; ++l)
            if (match_l_[l] < 0) { start = static_cast<int>(l); break; }
        if (start < 0) return std::nullopt;
        std::vector<char> in_s(nl_, 0), in_t(nr_, 0);
        std::queue<int> bfs;
        in_s[start] = 1;
        bfs.push(start);
        while (!bfs.empty()) {
            int l = bfs.front();
            bfs.pop();
            for (int r : adj_[l]) {
                if (in_t[r]) continue;
                in_t[r] = 1;
                int l2 = match_r_[r];
                // r must be matched, else an augmenting path would exist
                if (l2 >= 0 && !in_s[l2]) {
                    in_s[l2] = 1;
                    bfs.push(l2);
                }
            }
        }
        std::vector<int> s;
        for (size_t l = 0; l < nl_; ++l)
            if (in_s[l]) s.push_back(static_cast<int>(l));
        return s;
    }

private:
    size_t nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_;

    bool try_augment(int l, std::vector<char>& seen) {
        for (int r : adj_[l]) {
            if (seen[r]) continue;
            seen[r] = 1;
            if (match_r_[r] < 0 || try_augment(match_r_[r], seen)) {
                match_l_[l] = r;
                match_r_[r] = l;
                return true;
            }
        }
        return false;
    }
};

/// Dinic max-flow with int64 capacities; small networks only.
class MaxFlow {
public:
    explicit MaxFlow(size_t n) : head_(n, -1), level_(n), it_(n) {}

    void add_edge(int u, int v, long long cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    long long run(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            long long f;
            while ((f = dfs(s, t, INF)) > 0) flow += f;
        }
        return flow;
    }

    /// Source side of the min cut (valid after run()).
    std::vector<char> min_cut_source_side(int s) const {
        std::vector<char> vis(head_.size(), 0);
        std::queue<int> q;
        vis[s] = 1;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && !vis[edges_[e].to]) {
                    vis[edges_[e].to] = 1;
                    q.push(edges_[e].to);
                }
        }
        return vis;
    }

private:
    static constexpr long long INF = (1LL << 62);
    struct Edge {
        int to, next;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_, level_, it_;

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[u]; e >= 0; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }
    long long dfs(int u, int t, long long limit) {
        if (u == t) return limit;
        for (int& e = it_[u]; e >= 0; e = edges_[e].next) {
            auto& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                long long f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }
};

}  // namespace sumsets
