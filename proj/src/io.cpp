#include "limaut/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace limaut {

namespace {

template <class M>
void put_states(json& doc, const M& m) {
    json acc = json::array(), rej = json::array();
    for (int q = 0; q < m.num_states(); ++q) {
        if (m.accepting[q]) acc.push_back(m.states.name(q));
        if (m.rejecting[q]) rej.push_back(m.states.name(q));
    }
    doc["states"] = m.states.names();
    doc["accept"] = acc;
    doc["reject"] = rej;
    doc["initial"] = m.states.name(m.initial);
}

const json& field(const json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
    return doc.at(name);
}

std::string str(const json& v, const char* what) {
    if (!v.is_string()) throw InputError(std::string("field \"") + what + "\" must be a string");
    return v.get<std::string>();
}

std::vector<std::string> strings(const json& v, const char* what) {
    if (!v.is_array()) throw InputError(std::string("field \"") + what + "\" must be a list");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(str(e, what));
    return out;
}

Rational prob_of(const json& tr) {
    if (!tr.contains("prob")) return 1;
    const auto& p = tr.at("prob");
    if (p.is_number_integer()) return Rational(p.get<long>());
    return parse_rational(str(p, "prob"));
}

int dir_of(const json& v) {
    int d = 0;
    if (v.is_number_integer()) d = v.get<int>();
    else if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "+1" || s == "1" || s == "R") d = 1;
        else if (s == "-1" || s == "L") d = -1;
    }
    if (d != 1 && d != -1) throw InputError("direction must be +1 or -1");
    return d;
}

template <class M>
void load_states(M& m, const json& doc) {
    std::vector<std::string> acc = doc.contains("accept") ? strings(doc["accept"], "accept") : std::vector<std::string>{};
    std::vector<std::string> rej = doc.contains("reject") ? strings(doc["reject"], "reject") : std::vector<std::string>{};
    for (const auto& s : strings(field(doc, "states"), "states")) {
        if (m.states.find(s) >= 0) throw InputError("duplicate state \"" + s + "\"");
        m.add_state(s);
    }
    for (const auto& s : acc) {
        int q = m.states.find(s);
        if (q < 0) throw InputError("unknown accepting state \"" + s + "\"");
        m.accepting[q] = 1;
    }
    for (const auto& s : rej) {
        int q = m.states.find(s);
        if (q < 0) throw InputError("unknown rejecting state \"" + s + "\"");
        m.rejecting[q] = 1;
    }
    m.initial = m.states.find(str(field(doc, "initial"), "initial"));
    if (m.initial < 0) throw InputError("unknown initial state");
}

void check_reserved(const std::string& s) {
    if (s == kLeftEnd || s == kRightEnd || s == kLambda)
        throw InputError("symbol name \"" + s + "\" is reserved");
}

LimitedAutomaton limited_from_json(const json& doc) {
    int k = field(doc, "k").get<int>();
    const auto& alpha = field(doc, "alphabet");
    auto input = strings(field(alpha, "input"), "input");
    for (const auto& s : input) check_reserved(s);
    LimitedAutomaton m = LimitedAutomaton::with_input(k, input);
    if (m.symbols.size() != static_cast<int>(input.size()) + 2) throw InputError("duplicate input symbol");
    if (alpha.contains("levels")) {
        const auto& levels = alpha["levels"];
        if (!levels.is_array()) throw InputError("\"levels\" must be a list of lists");
        int lvl = 1;
        for (const auto& set : levels) {
            for (const auto& s : strings(set, "levels")) {
                if ((s == kLeftEnd || s == kRightEnd) && lvl == k) continue;
                check_reserved(s);
                if (m.symbols.find(s) >= 0) throw InputError("symbol \"" + s + "\" declared twice");
                m.add_symbol(s, lvl);
            }
            ++lvl;
        }
    }
    if (alpha.contains("blank") && !alpha["blank"].is_null()) {
        auto b = str(alpha["blank"], "blank");
        check_reserved(b);
        m.blank = m.symbols.find(b);
        if (m.blank < 0) m.blank = m.add_symbol(b, k);
    }
    load_states(m, doc);
    for (const auto& tr : field(doc, "transitions"))
        m.add(str(field(tr, "from"), "from"), str(field(tr, "read"), "read"), str(field(tr, "to"), "to"),
              str(field(tr, "write"), "write"), dir_of(field(tr, "dir")), prob_of(tr));
    m.claims_unambiguous = doc.value("unambiguous", false);
    return m;
}

PushdownAutomaton pda_from_json(const json& doc) {
    const auto& alpha = field(doc, "alphabet");
    auto input = strings(field(alpha, "input"), "input");
    for (const auto& s : input) check_reserved(s);
    std::string bottom = alpha.contains("bottom") ? str(alpha["bottom"], "bottom") : "⊥";
    PushdownAutomaton m = PushdownAutomaton::with_input(input, bottom);
    if (m.input.size() != static_cast<int>(input.size())) throw InputError("duplicate input symbol");
    if (alpha.contains("stack"))
        for (const auto& s : strings(alpha["stack"], "stack")) {
            if (s == bottom) continue;
            check_reserved(s);
            m.add_stack_symbol(s);
        }
    m.push_size = doc.value("push_size", 2);
    load_states(m, doc);
    for (const auto& tr : field(doc, "transitions")) {
        std::string push = tr.contains("push") ? str(tr["push"], "push") : "";
        if (push == kLambda) push.clear();
        m.add(str(field(tr, "from"), "from"), str(field(tr, "read"), "read"), str(field(tr, "top"), "top"),
              str(field(tr, "to"), "to"), push, prob_of(tr));
    }
    m.claims_unambiguous = doc.value("unambiguous", false);
    return m;
}

Dfa dfa_from_json(const json& doc) {
    Dfa d;
    for (const auto& s : strings(field(field(doc, "alphabet"), "input"), "input")) d.input.add(s);
    std::vector<std::string> acc = doc.contains("accept") ? strings(doc["accept"], "accept") : std::vector<std::string>{};
    for (const auto& s : strings(field(doc, "states"), "states")) d.add_state(s);
    for (const auto& s : acc) {
        int q = d.states.find(s);
        if (q < 0) throw InputError("unknown accepting state \"" + s + "\"");
        d.accepting[q] = 1;
    }
    d.start = d.states.find(str(field(doc, "initial"), "initial"));
    if (d.start < 0) throw InputError("unknown initial state");
    for (const auto& tr : field(doc, "transitions"))
        d.set(str(field(tr, "from"), "from"), str(field(tr, "read"), "read"), str(field(tr, "to"), "to"));
    return d;
}

RtTransducer transducer_from_json(const json& doc) {
    const auto& alpha = field(doc, "alphabet");
    RtTransducer t = RtTransducer::with_alphabets(strings(field(alpha, "input"), "input"),
                                                  strings(field(alpha, "output"), "output"));
    load_states(t, doc);
    for (const auto& tr : field(doc, "transitions"))
        t.add(str(field(tr, "from"), "from"), str(field(tr, "read"), "read"), str(field(tr, "to"), "to"),
              tr.contains("write") ? str(tr["write"], "write") : "");
    return t;
}

}  // namespace

json to_json(const LimitedAutomaton& m) {
    json doc;
    doc["kind"] = "limited";
    doc["k"] = m.k;
    json levels = json::array();
    for (int lvl = 1; lvl <= m.k; ++lvl) {
        json set = json::array();
        for (int s : m.symbols_at(lvl))
            if (s != m.left_end && s != m.right_end) set.push_back(m.symbols.name(s));
        levels.push_back(set);
    }
    doc["alphabet"] = {{"input", input_alphabet(m)}, {"levels", levels}};
    doc["alphabet"]["blank"] = m.blank >= 0 ? json(m.symbols.name(m.blank)) : json(nullptr);
    put_states(doc, m);
    json trs = json::array();
    for (const auto& t : m.transitions)
        trs.push_back({{"from", m.states.name(t.from)},
                       {"read", m.symbols.name(t.read)},
                       {"to", m.states.name(t.to)},
                       {"write", m.symbols.name(t.write)},
                       {"dir", t.dir},
                       {"prob", format_rational(t.prob)}});
    doc["transitions"] = trs;
    if (m.claims_unambiguous) doc["unambiguous"] = true;
    return doc;
}

json to_json(const PushdownAutomaton& m) {
    json doc;
    doc["kind"] = "pda";
    doc["alphabet"] = {{"input", m.input.names()}, {"stack", m.stack.names()}, {"bottom", m.stack.name(0)}};
    doc["push_size"] = m.push_size;
    put_states(doc, m);
    json trs = json::array();
    for (const auto& t : m.transitions)
        trs.push_back({{"from", m.states.name(t.from)},
                       {"read", m.read_name(t.read)},
                       {"top", m.stack.name(t.top)},
                       {"to", m.states.name(t.to)},
                       {"push", m.format_push(t.push)},
                       {"prob", format_rational(t.prob)}});
    doc["transitions"] = trs;
    if (m.claims_unambiguous) doc["unambiguous"] = true;
    return doc;
}

json to_json(const Dfa& d) {
    json doc;
    doc["kind"] = "dfa";
    doc["alphabet"] = {{"input", d.input.names()}};
    json acc = json::array();
    for (int q = 0; q < d.states.size(); ++q)
        if (d.accepting[q]) acc.push_back(d.states.name(q));
    doc["states"] = d.states.names();
    doc["accept"] = acc;
    doc["initial"] = d.states.name(d.start);
    json trs = json::array();
    for (int q = 0; q < d.states.size(); ++q)
        for (int a = 0; a < d.input.size(); ++a)
            if (d.next[q][a] >= 0)
                trs.push_back({{"from", d.states.name(q)}, {"read", d.input.name(a)}, {"to", d.states.name(d.next[q][a])}});
    doc["transitions"] = trs;
    return doc;
}

json to_json(const RtTransducer& t) {
    json doc;
    doc["kind"] = "transducer";
    doc["alphabet"] = {{"input", t.input.names()}, {"output", t.output.names()}};
    put_states(doc, t);
    json trs = json::array();
    for (const auto& tr : t.transitions)
        trs.push_back({{"from", t.states.name(tr.from)},
                       {"read", t.read_name(tr.read)},
                       {"to", t.states.name(tr.to)},
                       {"write", tr.output < 0 ? std::string() : t.output.name(tr.output)}});
    doc["transitions"] = trs;
    return doc;
}

json to_json(const AnyMachine& m) {
    return std::visit([](const auto& x) { return to_json(x); }, m);
}

AnyMachine machine_from_json(const json& doc) {
    try {
        auto kind = str(field(doc, "kind"), "kind");
        if (kind == "limited") return limited_from_json(doc);
        if (kind == "pda") return pda_from_json(doc);
        if (kind == "dfa") return dfa_from_json(doc);
        if (kind == "transducer") return transducer_from_json(doc);
        throw InputError("unknown machine kind \"" + kind + "\"");
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed machine document: ") + e.what());
    }
}

json machine_document(const AnyMachine& m, const json& provenance) {
    json doc = to_json(m);
    if (!provenance.is_null()) doc["provenance"] = provenance;
    return doc;
}

MachineFile load_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    MachineFile f{machine_from_json(doc), nullptr};
    if (doc.contains("provenance")) f.provenance = doc["provenance"];
    return f;
}

void save_machine_file(const std::string& path, const AnyMachine& m, const json& provenance) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << machine_document(m, provenance).dump(2) << "\n";
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

std::string machine_digest(const AnyMachine& m) { return sha256_hex(to_json(m).dump()); }

json provenance_record(const std::string& transform, const AnyMachine& source, const json& parameters) {
    return {{"transform", transform}, {"source_digest", machine_digest(source)}, {"parameters", parameters}};
}

}  // namespace limaut
