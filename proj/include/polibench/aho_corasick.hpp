#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace polibench {

/// Byte-level Aho-Corasick automaton over a fixed pattern set. Byte matching
/// is exact code point matching for valid UTF-8, whose encoding is
/// self-synchronizing.
///
/// Children are stored as sorted edge ranges per state (CSR) with a dense
/// table for the root, so memory stays linear in the total pattern length.
class PatternAutomaton {
public:
    using PatternId = std::uint32_t;

    /// Empty patterns are ignored; duplicates share one state and both ids
    /// are reported.
    explicit PatternAutomaton(const std::vector<std::string_view>& patterns);

    /// Calls `on_match(pattern_id)` for every occurrence of every pattern in
    /// `text` (a pattern occurring twice is reported twice).
    template <typename OnMatch>
    void scan(std::string_view text, OnMatch&& on_match) const;

    std::size_t state_count() const noexcept { return fail_.size(); }

private:
    using StateId = std::uint32_t;
    static constexpr StateId kNone = 0xFFFFFFFFu;

    StateId child(StateId state, std::uint8_t byte) const noexcept;
    StateId step(StateId state, std::uint8_t byte) const noexcept;

    // CSR children
    std::vector<std::uint32_t> edge_begin_;
    std::vector<std::uint8_t> edge_byte_;
    std::vector<StateId> edge_target_;
    StateId root_next_[256];

    std::vector<StateId> fail_;
    // nearest state on the failure chain (including self) that ends a pattern
    std::vector<StateId> output_link_;
    // patterns ending at a state: output_begin_[s] .. output_begin_[s+1]
    std::vector<std::uint32_t> output_begin_;
    std::vector<PatternId> output_ids_;
};

inline PatternAutomaton::StateId PatternAutomaton::child(StateId state, std::uint8_t byte) const noexcept {
    if (state == 0) return root_next_[byte];
    const std::uint32_t begin = edge_begin_[state];
    const std::uint32_t end = edge_begin_[state + 1];
    for (std::uint32_t e = begin; e < end; ++e) {
        if (edge_byte_[e] == byte) return edge_target_[e];
        if (edge_byte_[e] > byte) break;
    }
    return kNone;
}

inline PatternAutomaton::StateId PatternAutomaton::step(StateId state, std::uint8_t byte) const noexcept {
    while (true) {
        const StateId next = child(state, byte);
        if (next != kNone) return next;
        if (state == 0) return 0;
        state = fail_[state];
    }
}

template <typename OnMatch>
void PatternAutomaton::scan(std::string_view text, OnMatch&& on_match) const {
    StateId state = 0;
    for (const char ch : text) {
        state = step(state, static_cast<std::uint8_t>(ch));
        for (StateId out = output_link_[state]; out != kNone; out = output_link_[fail_[out]]) {
            for (std::uint32_t i = output_begin_[out]; i < output_begin_[out + 1]; ++i) {
                on_match(output_ids_[i]);
            }
        }
    }
}

}  // namespace polibench
