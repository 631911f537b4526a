#pragma once

#include "explor/pda.hpp"
#include "explor/turing.hpp"

namespace explor {

// deterministic matcher for a^n b^{i*n}
Pda multiple_dpda(int i);

// nondeterministic union of multiple_dpda(1) .. multiple_dpda(k+1) behind a
// fresh accepting start state
Pda union_pda(int k);

// epsilon-free machine for (a^*#)^* b^m where m is the length of some
// a-block; the matching block is guessed when its first letter arrives
Pda block_pda();

// DFA for (a^*#)^{k+1} b^*
Dfa block_regular_dfa(int k);

// adds a primed copy of the machine reachable by epsilon from every
// accepting state; in the copy each b is relabeled to c, epsilon moves are
// kept, and every other letter is dropped. only primed accepting states
// accept. throws LetterClash when c is already readable, AlphabetMismatch
// when b is not.
Pda relabel_extension(const Pda& pda, char b, char c);

// words over 01 with a 1 at the n-th position from the end, using a binary
// counter so the state count stays logarithmic in n
Pda suffix_one_pda(int n);

// (0+1)^{<n} (1 (0+1)^{n-1})^*: a short prefix, then blocks of length n
// anchored on 1
Pda mod_pda(int n);

// accepts exactly the strings that do not encode a halting computation of
// tm. one initial epsilon choice fans out into three deterministic
// branches: two successor checkers (even and odd step pairs, each also
// carrying the format checks) and one pure format walker. throws
// EncodingOverflow when tm cannot be encoded (multi-character or colliding
// state names, separator collisions, or a rule that writes the blank while
// moving left).
Pda invalc_pda(const TuringMachine& tm);

} // namespace explor
