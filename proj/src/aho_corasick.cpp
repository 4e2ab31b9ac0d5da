#include "polibench/aho_corasick.hpp"

#include <algorithm>
#include <numeric>

namespace polibench {

PatternAutomaton::PatternAutomaton(const std::vector<std::string_view>& patterns) {
    std::vector<PatternId> order;
    order.reserve(patterns.size());
    for (PatternId i = 0; i < patterns.size(); ++i) {
        if (!patterns[i].empty()) order.push_back(i);
    }
    std::sort(order.begin(), order.end(),
              [&](PatternId a, PatternId b) { return patterns[a] < patterns[b]; });

    // Inserting in lexicographic order means a new pattern can only share the
    // path of its predecessor, and each state's children appear in byte order.
    struct Edge {
        StateId parent;
        std::uint8_t byte;
        StateId target;
    };
    std::vector<Edge> edges;
    std::vector<std::pair<StateId, PatternId>> terminals;
    std::vector<StateId> path{0};  // path[d] = state at depth d of the previous pattern
    std::string_view previous;
    StateId state_count = 1;

    for (const PatternId id : order) {
        const std::string_view pattern = patterns[id];
        const auto mismatch = std::mismatch(pattern.begin(), pattern.end(), previous.begin(), previous.end());
        const std::size_t common = static_cast<std::size_t>(mismatch.first - pattern.begin());
        path.resize(common + 1);
        for (std::size_t d = common; d < pattern.size(); ++d) {
            const StateId next = state_count++;
            edges.push_back({path.back(), static_cast<std::uint8_t>(pattern[d]), next});
            path.push_back(next);
        }
        terminals.emplace_back(path.back(), id);
        previous = pattern;
    }

    // children in CSR form (stable counting sort by parent keeps byte order)
    edge_begin_.assign(state_count + 1, 0);
    for (const Edge& e : edges) ++edge_begin_[e.parent + 1];
    std::partial_sum(edge_begin_.begin(), edge_begin_.end(), edge_begin_.begin());
    edge_byte_.resize(edges.size());
    edge_target_.resize(edges.size());
    {
        std::vector<std::uint32_t> cursor(edge_begin_.begin(), edge_begin_.end() - 1);
        for (const Edge& e : edges) {
            const std::uint32_t slot = cursor[e.parent]++;
            edge_byte_[slot] = e.byte;
            edge_target_[slot] = e.target;
        }
    }
    std::fill(std::begin(root_next_), std::end(root_next_), kNone);
    for (std::uint32_t e = edge_begin_[0]; e < edge_begin_[1]; ++e) {
        root_next_[edge_byte_[e]] = edge_target_[e];
    }

    output_begin_.assign(state_count + 1, 0);
    for (const auto& [state, id] : terminals) ++output_begin_[state + 1];
    std::partial_sum(output_begin_.begin(), output_begin_.end(), output_begin_.begin());
    output_ids_.resize(terminals.size());
    {
        std::vector<std::uint32_t> cursor(output_begin_.begin(), output_begin_.end() - 1);
        for (const auto& [state, id] : terminals) output_ids_[cursor[state]++] = id;
    }

    // failure and output links in breadth-first order
    fail_.assign(state_count, 0);
    output_link_.assign(state_count, kNone);
    std::vector<StateId> queue;
    queue.reserve(state_count);
    for (std::uint32_t e = edge_begin_[0]; e < edge_begin_[1]; ++e) {
        queue.push_back(edge_target_[e]);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const StateId u = queue[head];
        const bool terminal = output_begin_[u] != output_begin_[u + 1];
        output_link_[u] = terminal ? u : output_link_[fail_[u]];
        for (std::uint32_t e = edge_begin_[u]; e < edge_begin_[u + 1]; ++e) {
            const StateId v = edge_target_[e];
            fail_[v] = step(fail_[u], edge_byte_[e]);
            queue.push_back(v);
        }
    }
}

}  // namespace polibench
