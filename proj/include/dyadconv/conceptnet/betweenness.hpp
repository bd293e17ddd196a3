#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dyadconv/conceptnet/concept_map.hpp"

namespace dyadconv::conceptnet {

/**
 * Directed, unweighted betweenness centrality by Brandes' algorithm.
 * Raw counts over ordered pairs (s, t); no normalization.
 */
inline std::map<std::string, double> betweenness(const ConceptMap& map) {
    std::vector<std::string> names(map.nodes.begin(), map.nodes.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
    const std::size_t n = names.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [edge, w] : map.edges) {
        if (edge.first == edge.second) continue;
        adj[index.at(edge.first)].push_back(index.at(edge.second));
    }

    std::vector<double> cb(n, 0.0);
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<long long> dist(n);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        stack.clear();
        for (std::size_t v = 0; v < n; ++v) {
            pred[v].clear();
            sigma[v] = 0.0;
            delta[v] = 0.0;
            dist[v] = -1;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            stack.push_back(v);
            for (std::size_t w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        while (!stack.empty()) {
            const std::size_t w = stack.back();
            stack.pop_back();
            for (std::size_t v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) cb[w] += delta[w];
        }
    }
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < n; ++i) out[names[i]] = cb[i];
    return out;
}

struct MapStats {
    long long shared_concepts = 0;
    long long isolated_shared_concepts = 0;
    long long non_isolated_shared_concepts = 0;
    long long shared_links = 0;       ///< sum of min-weights
    long long shared_link_edges = 0;  ///< distinct shared directed edges
    double mean_betweenness = 0.0;
};

inline MapStats map_stats(const ConceptMap& intersection) {
    MapStats st;
    st.shared_concepts = static_cast<long long>(intersection.nodes.size());
    std::set<std::string> touched;
    for (const auto& [edge, w] : intersection.edges) {
        st.shared_links += w;
        ++st.shared_link_edges;
        touched.insert(edge.first);
        touched.insert(edge.second);
    }
    for (const auto& node : intersection.nodes) {
        if (touched.contains(node)) ++st.non_isolated_shared_concepts;
        else ++st.isolated_shared_concepts;
    }
    if (!intersection.nodes.empty()) {
        double sum = 0.0;
        for (const auto& [node, c] : betweenness(intersection)) sum += c;
        st.mean_betweenness = sum / static_cast<double>(intersection.nodes.size());
    }
    return st;
}

/// Overlap between a speaker's map and the map of a worksheet text.
inline MapStats worksheet_overlap(const ConceptMap& speaker_map, const ConceptMap& worksheet_map) {
    return map_stats(intersect(speaker_map, worksheet_map));
}

}  // namespace dyadconv::conceptnet
