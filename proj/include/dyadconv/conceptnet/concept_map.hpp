#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <iterator>
#include <set>
#include <string_view>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dyadconv/conceptnet/preprocess.hpp"

namespace dyadconv::conceptnet {

/// Weighted directed co-occurrence network; weight(i, j) counts forward links from i to j.
struct ConceptMap {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, long long> edges;

    [[nodiscard]] long long weight(const std::string& from, const std::string& to) const {
        const auto it = edges.find({from, to});
        return it == edges.end() ? 0 : it->second;
    }

    [[nodiscard]] long long total_weight() const {
        long long w = 0;
        for (const auto& [k, v] : edges) w += v;
        return w;
    }

    bool operator==(const ConceptMap&) const = default;
};

struct WindowSpec {
    std::size_t window_words = 10;         ///< farthest forward distance, in concept positions
    std::size_t stop_unit_sentences = 10;  ///< sentences per block; links never cross blocks
};

/**
 * Build the concept map. Sentences are grouped into consecutive disjoint
 * blocks of `stop_unit_sentences`. Within a block, each token position k
 * links once to every distinct concept at positions k+1 .. k+window_words,
 * except its own concept.
 */
inline ConceptMap build_map(std::span<const Sentence> sentences, WindowSpec spec = {}) {
    if (spec.window_words < 1 || spec.stop_unit_sentences < 1) {
        throw std::invalid_argument("build_map: window and stop unit must be >= 1");
    }
    ConceptMap map;
    for (std::size_t b = 0; b < sentences.size(); b += spec.stop_unit_sentences) {
        std::vector<const std::string*> block;
        const std::size_t e = std::min(sentences.size(), b + spec.stop_unit_sentences);
        for (std::size_t s = b; s < e; ++s) {
            for (const auto& tok : sentences[s]) block.push_back(&tok);
        }
        for (const auto* tok : block) map.nodes.insert(*tok);
        for (std::size_t k = 0; k < block.size(); ++k) {
            std::set<std::string_view> targets;
            const std::size_t last = std::min(block.size() - 1, k + spec.window_words);
            for (std::size_t j = k + 1; j <= last; ++j) {
                if (*block[j] != *block[k]) targets.insert(*block[j]);
            }
            for (auto t : targets) ++map.edges[{*block[k], std::string(t)}];
        }
    }
    return map;
}

/// Shared nodes, and shared directed edges weighted by the smaller count.
inline ConceptMap intersect(const ConceptMap& a, const ConceptMap& b) {
    ConceptMap out;
    std::set_intersection(a.nodes.begin(), a.nodes.end(), b.nodes.begin(), b.nodes.end(),
                          std::inserter(out.nodes, out.nodes.end()));
    for (const auto& [edge, wa] : a.edges) {
        const auto it = b.edges.find(edge);
        if (it != b.edges.end()) out.edges.emplace(edge, std::min(wa, it->second));
    }
    return out;
}

}  // namespace dyadconv::conceptnet
