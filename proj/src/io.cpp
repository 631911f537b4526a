#include "explor/io.hpp"

#include "explor/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace explor {

namespace {

using json = nlohmann::ordered_json;

json parse_doc(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw ParseError(std::string("missing field: ") + name);
    return *it;
}

std::string get_string(const json& doc, const char* name) {
    const json& v = field(doc, name);
    if (!v.is_string()) throw ParseError(std::string("field must be a string: ") + name);
    return v.get<std::string>();
}

char get_letter(const json& v, const char* where) {
    if (!v.is_string() || v.get<std::string>().size() != 1)
        throw ParseError(std::string("expected a single-character string in ") + where);
    return v.get<std::string>()[0];
}

std::vector<std::string> get_string_array(const json& doc, const char* name) {
    const json& v = field(doc, name);
    if (!v.is_array()) throw ParseError(std::string("field must be an array: ") + name);
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ParseError(std::string("non-string entry in ") + name);
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<char> get_letter_array(const json& doc, const char* name) {
    const json& v = field(doc, name);
    if (!v.is_array()) throw ParseError(std::string("field must be an array: ") + name);
    std::vector<char> out;
    for (const auto& e : v) out.push_back(get_letter(e, name));
    return out;
}

json letters_json(const std::vector<char>& letters) {
    json arr = json::array();
    for (char c : letters) arr.push_back(std::string(1, c));
    return arr;
}

} // namespace

Pda parse_pda(const std::string& text) {
    json doc = parse_doc(text);
    if (!doc.is_object()) throw ParseError("a machine document must be an object");
    Pda pda;
    pda.states = get_string_array(doc, "states");
    pda.input_alphabet = get_letter_array(doc, "input_alphabet");
    pda.stack_alphabet = get_string_array(doc, "stack_alphabet");
    pda.initial_state = get_string(doc, "initial_state");
    pda.initial_stack_symbol = get_string(doc, "initial_stack_symbol");
    pda.accepting = get_string_array(doc, "accepting");
    const json& trans = field(doc, "transitions");
    if (!trans.is_array()) throw ParseError("field must be an array: transitions");
    for (const auto& t : trans) {
        if (!t.is_object()) throw ParseError("each transition must be an object");
        Transition tr;
        tr.from = get_string(t, "from");
        const json& in = field(t, "input");
        if (in.is_null()) tr.input = std::nullopt;
        else tr.input = get_letter(in, "input");
        tr.pop = get_string(t, "pop");
        tr.to = get_string(t, "to");
        const json& push = field(t, "push");
        if (!push.is_array() || push.size() > 2)
            throw ParseError("push must be an array of at most two stack symbols");
        for (const auto& s : push) {
            if (!s.is_string()) throw ParseError("non-string entry in push");
            tr.push.push_back(s.get<std::string>());
        }
        pda.transitions.push_back(std::move(tr));
    }
    return pda;
}

std::string dump_pda(const Pda& pda) {
    json doc;
    doc["states"] = pda.states;
    doc["input_alphabet"] = letters_json(pda.input_alphabet);
    doc["stack_alphabet"] = pda.stack_alphabet;
    doc["initial_state"] = pda.initial_state;
    doc["initial_stack_symbol"] = pda.initial_stack_symbol;
    doc["accepting"] = pda.accepting;
    json trans = json::array();
    for (const auto& t : pda.transitions) {
        json tr;
        tr["from"] = t.from;
        if (t.input) tr["input"] = std::string(1, *t.input);
        else tr["input"] = nullptr;
        tr["pop"] = t.pop;
        tr["to"] = t.to;
        tr["push"] = t.push;
        trans.push_back(std::move(tr));
    }
    doc["transitions"] = std::move(trans);
    return doc.dump(2) + "\n";
}

Dfa parse_dfa(const std::string& text) {
    json doc = parse_doc(text);
    if (!doc.is_object()) throw ParseError("a machine document must be an object");
    Dfa dfa;
    dfa.states = get_string_array(doc, "states");
    dfa.alphabet = get_letter_array(doc, "alphabet");
    dfa.initial = get_string(doc, "initial");
    dfa.accepting = get_string_array(doc, "accepting");
    const json& trans = field(doc, "transitions");
    if (!trans.is_array()) throw ParseError("field must be an array: transitions");
    for (const auto& t : trans) {
        if (!t.is_object()) throw ParseError("each transition must be an object");
        DfaTransition tr;
        tr.from = get_string(t, "from");
        tr.input = get_letter(field(t, "input"), "input");
        tr.to = get_string(t, "to");
        dfa.transitions.push_back(std::move(tr));
    }
    return dfa;
}

std::string dump_dfa(const Dfa& dfa) {
    json doc;
    doc["states"] = dfa.states;
    doc["alphabet"] = letters_json(dfa.alphabet);
    doc["initial"] = dfa.initial;
    doc["accepting"] = dfa.accepting;
    json trans = json::array();
    for (const auto& t : dfa.transitions) {
        json tr;
        tr["from"] = t.from;
        tr["input"] = std::string(1, t.input);
        tr["to"] = t.to;
        trans.push_back(std::move(tr));
    }
    doc["transitions"] = std::move(trans);
    return doc.dump(2) + "\n";
}

TuringMachine parse_tm(const std::string& text) {
    json doc = parse_doc(text);
    if (!doc.is_object()) throw ParseError("a machine document must be an object");
    TuringMachine tm;
    tm.states = get_string_array(doc, "states");
    tm.input_alphabet = get_letter_array(doc, "input_alphabet");
    tm.tape_alphabet = get_letter_array(doc, "tape_alphabet");
    tm.blank = get_letter(field(doc, "blank"), "blank");
    const json& delta = field(doc, "delta");
    if (!delta.is_array()) throw ParseError("field must be an array: delta");
    for (const auto& r : delta) {
        if (!r.is_object()) throw ParseError("each rule must be an object");
        TmRule rule;
        rule.state = get_string(r, "state");
        rule.read = get_letter(field(r, "read"), "read");
        rule.next = get_string(r, "next");
        rule.write = get_letter(field(r, "write"), "write");
        std::string mv = get_string(r, "move");
        if (mv == "L") rule.move = 'L';
        else if (mv == "R") rule.move = 'R';
        else throw ParseError("move must be L or R");
        tm.delta.push_back(std::move(rule));
    }
    tm.start = get_string(doc, "start");
    tm.accept = get_string(doc, "accept");
    tm.reject = get_string(doc, "reject");
    return tm;
}

std::string dump_tm(const TuringMachine& tm) {
    json doc;
    doc["states"] = tm.states;
    doc["input_alphabet"] = letters_json(tm.input_alphabet);
    doc["tape_alphabet"] = letters_json(tm.tape_alphabet);
    doc["blank"] = std::string(1, tm.blank);
    json delta = json::array();
    for (const auto& r : tm.delta) {
        json rule;
        rule["state"] = r.state;
        rule["read"] = std::string(1, r.read);
        rule["next"] = r.next;
        rule["write"] = std::string(1, r.write);
        rule["move"] = std::string(1, r.move);
        delta.push_back(std::move(rule));
    }
    doc["delta"] = std::move(delta);
    doc["start"] = tm.start;
    doc["accept"] = tm.accept;
    doc["reject"] = tm.reject;
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
    if (!out) throw ParseError("cannot write file: " + path);
}

Pda load_pda(const std::string& path) { return parse_pda(read_text_file(path)); }
Dfa load_dfa(const std::string& path) { return parse_dfa(read_text_file(path)); }
TuringMachine load_tm(const std::string& path) { return parse_tm(read_text_file(path)); }

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string export_dot(const Pda& pda) {
    std::ostringstream out;
    out << "digraph pda {\n";
    out << "  rankdir=LR;\n";
    out << "  __start [shape=point];\n";
    std::set<std::string> acc(pda.accepting.begin(), pda.accepting.end());
    for (const auto& q : pda.states) {
        out << "  " << dot_quote(q) << " [shape="
            << (acc.count(q) ? "doublecircle" : "circle") << "];\n";
    }
    out << "  __start -> " << dot_quote(pda.initial_state) << ";\n";
    for (const auto& t : pda.transitions) {
        std::string push;
        for (std::size_t i = 0; i < t.push.size(); ++i) {
            if (i) push += " ";
            push += t.push[i];
        }
        std::string label = (t.input ? std::string(1, *t.input) : std::string("eps")) + "," +
                            t.pop + "/" + push;
        out << "  " << dot_quote(t.from) << " -> " << dot_quote(t.to) << " [label="
            << dot_quote(label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace explor
