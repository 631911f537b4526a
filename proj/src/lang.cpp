#include "explor/lang.hpp"

#include "explor/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace explor {

namespace {

using Tag = LanguageSpec::Tag;

bool decide_multiple(int i, std::string_view w) {
    std::size_t n = 0;
    while (n < w.size() && w[n] == 'a') ++n;
    for (std::size_t p = n; p < w.size(); ++p) {
        if (w[p] != 'b') return false;
    }
    return w.size() - n == n * static_cast<std::size_t>(i);
}

// splits (a^*#)^* b^m; returns false when the shape itself is off
bool split_blocks(std::string_view w, std::vector<std::size_t>& blocks, std::size_t& bs) {
    std::size_t p = 0;
    std::size_t run = 0;
    blocks.clear();
    while (p < w.size() && w[p] != 'b') {
        if (w[p] == 'a') {
            ++run;
        } else { // '#'
            blocks.push_back(run);
            run = 0;
        }
        ++p;
    }
    if (run != 0) return false; // block part must close with '#'
    bs = 0;
    while (p < w.size()) {
        if (w[p] != 'b') return false;
        ++bs;
        ++p;
    }
    return true;
}

bool decide_block(std::string_view w) {
    std::vector<std::size_t> blocks;
    std::size_t bs = 0;
    if (!split_blocks(w, blocks, bs)) return false;
    return std::find(blocks.begin(), blocks.end(), bs) != blocks.end();
}

bool decide_block_k(int k, std::string_view w) {
    std::vector<std::size_t> blocks;
    std::size_t bs = 0;
    if (!split_blocks(w, blocks, bs)) return false;
    if (blocks.size() != static_cast<std::size_t>(k) + 1) return false;
    return std::find(blocks.begin(), blocks.end(), bs) != blocks.end();
}

bool decide_suffix_one(int n, std::string_view w) {
    return w.size() >= static_cast<std::size_t>(n) && w[w.size() - n] == '1';
}

bool decide_mod(int n, std::string_view w) {
    std::size_t un = static_cast<std::size_t>(n);
    if (w.size() < un) return true;
    for (std::size_t j = w.size() % un; j + un <= w.size(); j += un) {
        if (w[j] != '1') return false;
    }
    return true;
}

bool decide_pair_family(const LanguageSpec& spec, std::string_view w) {
    std::size_t n = 0, b = 0, c = 0, p = 0;
    while (p < w.size() && w[p] == 'a') ++n, ++p;
    while (p < w.size() && w[p] == 'b') ++b, ++p;
    while (p < w.size() && w[p] == 'c') ++c, ++p;
    if (p != w.size()) return false;
    auto it = spec.pair_table.find(static_cast<int>(n));
    if (it == spec.pair_table.end()) return false;
    for (auto [i, j] : it->second) {
        if (b == n * static_cast<std::size_t>(i) && c == n * static_cast<std::size_t>(j))
            return true;
    }
    return false;
}

bool decide_block_pairs(const LanguageSpec& spec, std::string_view w) {
    for (const auto& [u, pairs] : spec.block_pair_table) {
        if (w.size() < u.size() || w.substr(0, u.size()) != u) continue;
        std::string_view rest = w.substr(u.size());
        std::size_t b = 0, c = 0, p = 0;
        while (p < rest.size() && rest[p] == 'b') ++b, ++p;
        while (p < rest.size() && rest[p] == 'c') ++c, ++p;
        if (p != rest.size()) continue;
        for (auto [i, j] : pairs) {
            if (b == static_cast<std::size_t>(i) &&
                c == static_cast<std::size_t>(std::abs(j - i)))
                return true;
        }
    }
    return false;
}

} // namespace

LanguageSpec multiple_language(int i) {
    if (i < 1) throw ConfigError("multiple_language needs i >= 1");
    LanguageSpec s;
    s.tag = Tag::Multiple;
    s.param = i;
    return s;
}

LanguageSpec union_language(int k) {
    if (k < 1) throw ConfigError("union_language needs k >= 1");
    LanguageSpec s;
    s.tag = Tag::UnionK;
    s.param = k;
    return s;
}

LanguageSpec block_language() {
    LanguageSpec s;
    s.tag = Tag::Block;
    return s;
}

LanguageSpec block_k_language(int k) {
    if (k < 0) throw ConfigError("block_k_language needs k >= 0");
    LanguageSpec s;
    s.tag = Tag::BlockK;
    s.param = k;
    return s;
}

LanguageSpec suffix_one_language(int n) {
    if (n < 1) throw ConfigError("suffix_one_language needs n >= 1");
    LanguageSpec s;
    s.tag = Tag::SuffixOne;
    s.param = n;
    return s;
}

LanguageSpec mod_language(int n) {
    if (n < 1) throw ConfigError("mod_language needs n >= 1");
    LanguageSpec s;
    s.tag = Tag::ModCycle;
    s.param = n;
    return s;
}

LanguageSpec pair_family_language(std::map<int, std::set<std::pair<int, int>>> table) {
    for (const auto& [n, pairs] : table) {
        if (n < 0) throw ConfigError("pair_family_language needs n >= 0");
        for (auto [i, j] : pairs) {
            if (i < 0 || j < 0) throw ConfigError("pair_family_language needs i, j >= 0");
        }
    }
    LanguageSpec s;
    s.tag = Tag::PairFamily;
    s.pair_table = std::move(table);
    return s;
}

LanguageSpec block_pairs_language(std::map<std::string, std::set<std::pair<int, int>>> table) {
    for (const auto& [u, pairs] : table) {
        for (char c : u) {
            if (c == 'b' || c == 'c')
                throw ConfigError("block_pairs_language prefixes must avoid b and c");
        }
        for (auto [i, j] : pairs) {
            if (i < 0 || j < 0) throw ConfigError("block_pairs_language needs i, j >= 0");
        }
    }
    LanguageSpec s;
    s.tag = Tag::BlockPairs;
    s.block_pair_table = std::move(table);
    return s;
}

LanguageSpec invalc_language(TuringMachine tm) {
    encoding_alphabet(tm); // validates encodability
    LanguageSpec s;
    s.tag = Tag::Invalc;
    s.tm = std::move(tm);
    return s;
}

std::vector<char> alphabet_of(const LanguageSpec& spec) {
    switch (spec.tag) {
    case Tag::Multiple:
    case Tag::UnionK:
        return {'a', 'b'};
    case Tag::Block:
    case Tag::BlockK:
        return {'a', '#', 'b'};
    case Tag::SuffixOne:
    case Tag::ModCycle:
        return {'0', '1'};
    case Tag::PairFamily:
        return {'a', 'b', 'c'};
    case Tag::BlockPairs: {
        std::set<char> chars{'b', 'c'};
        for (const auto& [u, pairs] : spec.block_pair_table) {
            (void)pairs;
            chars.insert(u.begin(), u.end());
        }
        return {chars.begin(), chars.end()};
    }
    case Tag::Invalc:
        return encoding_alphabet(*spec.tm);
    }
    throw Error("unknown language tag");
}

bool decide(const LanguageSpec& spec, std::string_view w) {
    std::vector<char> sigma = alphabet_of(spec);
    for (char c : w) {
        if (std::find(sigma.begin(), sigma.end(), c) == sigma.end())
            throw AlphabetMismatch(std::string("character ") + c + " outside the language alphabet");
    }
    switch (spec.tag) {
    case Tag::Multiple:
        return decide_multiple(spec.param, w);
    case Tag::UnionK:
        for (int i = 1; i <= spec.param + 1; ++i) {
            if (decide_multiple(i, w)) return true;
        }
        return false;
    case Tag::Block:
        return decide_block(w);
    case Tag::BlockK:
        return decide_block_k(spec.param, w);
    case Tag::SuffixOne:
        return decide_suffix_one(spec.param, w);
    case Tag::ModCycle:
        return decide_mod(spec.param, w);
    case Tag::PairFamily:
        return decide_pair_family(spec, w);
    case Tag::BlockPairs:
        return decide_block_pairs(spec, w);
    case Tag::Invalc:
        return invalc_oracle(*spec.tm, w);
    }
    throw Error("unknown language tag");
}

std::vector<std::string> enumerate(const LanguageSpec& spec, int max_len) {
    if (spec.tag == Tag::Invalc)
        throw Error("enumerate is not supported for the invalid computation language");
    std::vector<char> sigma = alphabet_of(spec);
    std::sort(sigma.begin(), sigma.end());
    std::vector<std::string> out;
    std::vector<std::string> layer{""};
    for (int len = 0; len <= max_len; ++len) {
        for (const auto& w : layer) {
            if (decide(spec, w)) out.push_back(w);
        }
        if (len == max_len) break;
        std::vector<std::string> next;
        next.reserve(layer.size() * sigma.size());
        for (const auto& w : layer) {
            for (char c : sigma) next.push_back(w + c);
        }
        layer = std::move(next);
    }
    return out;
}

} // namespace explor
