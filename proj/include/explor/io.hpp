#pragma once

#include "explor/pda.hpp"
#include "explor/turing.hpp"

#include <string>

namespace explor {

// structured-object document parsers. All throw ParseError with a diagnostic
// (line/column for malformed documents, field path for schema trouble).
Pda parse_pda(const std::string& text);
Dfa parse_dfa(const std::string& text);
TuringMachine parse_tm(const std::string& text);

// deterministic serializers; parse(dump(x)) == x
std::string dump_pda(const Pda& pda);
std::string dump_dfa(const Dfa& dfa);
std::string dump_tm(const TuringMachine& tm);

// file helpers; throw ParseError when the file cannot be read or written
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Pda load_pda(const std::string& path);
Dfa load_dfa(const std::string& path);
TuringMachine load_tm(const std::string& path);

// directed-graph text: one node per state, accepting states doubled,
// edge labels "input,pop/push". Node and edge order follow the Pda fields.
std::string export_dot(const Pda& pda);

} // namespace explor
