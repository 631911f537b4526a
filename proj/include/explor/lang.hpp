#pragma once

#include "explor/turing.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace explor {

// reference deciders for the construction target languages, kept independent
// of the automata so test expectations come from string arithmetic alone
struct LanguageSpec {
    enum class Tag {
        Multiple,   // a^n b^{i*n}
        UnionK,     // union of Multiple(1..k+1)
        Block,      // (a^*#)^* b^m with m the length of some a-block
        BlockK,     // Block restricted to exactly k+1 blocks
        SuffixOne,  // words over 01 with a 1 at the n-th position from the end
        ModCycle,   // (0+1)^{<n} (1 (0+1)^{n-1})^*
        PairFamily, // a^n b^{i*n} c^{j*n} with (i, j) drawn from a per-n table
        BlockPairs, // u b^i c^{|j-i|} with (i, j) drawn from a per-u table
        Invalc,     // strings that do not encode a halting computation
    };

    Tag tag = Tag::Block;
    int param = 0;
    std::map<int, std::set<std::pair<int, int>>> pair_table;
    std::map<std::string, std::set<std::pair<int, int>>> block_pair_table;
    std::optional<TuringMachine> tm;
};

LanguageSpec multiple_language(int i);
LanguageSpec union_language(int k);
LanguageSpec block_language();
LanguageSpec block_k_language(int k);
LanguageSpec suffix_one_language(int n);
LanguageSpec mod_language(int n);
LanguageSpec pair_family_language(std::map<int, std::set<std::pair<int, int>>> table);
LanguageSpec block_pairs_language(std::map<std::string, std::set<std::pair<int, int>>> table);
LanguageSpec invalc_language(TuringMachine tm);

// declared alphabet, in a fixed deterministic order
std::vector<char> alphabet_of(const LanguageSpec& spec);

// membership; throws AlphabetMismatch when w uses other characters
bool decide(const LanguageSpec& spec, std::string_view w);

// all members of length <= max_len in length-then-lex order; unsupported for
// Invalc (throws Error)
std::vector<std::string> enumerate(const LanguageSpec& spec, int max_len);

} // namespace explor
