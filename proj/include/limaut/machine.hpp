#pragma once

#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "limaut/rational.hpp"

namespace limaut {

inline const std::string kLeftEnd = "|c";
inline const std::string kRightEnd = "$";
inline const std::string kLambda = "λ";

// Inputs are sequences of symbol names so that machines with different
// interning can be compared on the same word.
using Word = std::vector<std::string>;

std::string word_to_string(const Word& w);
Word reversed(Word w);

// Name <-> dense id table.
class NameTable {
public:
    int add(const std::string& name);  // returns the existing id if present
    int find(const std::string& name) const;  // -1 if absent
    const std::string& name(int id) const { return names_[id]; }
    const std::vector<std::string>& names() const { return names_; }
    int size() const { return static_cast<int>(names_.size()); }
    bool operator==(const NameTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

struct LimitedTransition {
    int from = 0;
    int read = 0;
    int to = 0;
    int write = 0;
    int dir = +1;
    Rational prob = 1;
    bool operator==(const LimitedTransition&) const = default;
};

struct LimitedAutomaton {
    int k = 1;
    NameTable states;
    NameTable symbols;
    std::vector<int> level;  // per symbol
    int left_end = -1;
    int right_end = -1;
    int blank = -1;
    int initial = 0;
    std::vector<char> accepting;  // per state
    std::vector<char> rejecting;
    std::vector<LimitedTransition> transitions;
    bool claims_unambiguous = false;

    // Creates an empty machine whose alphabet holds the input symbols at level
    // 0 and the endmarkers at level k.
    static LimitedAutomaton with_input(int k, const std::vector<std::string>& input);

    int num_states() const { return states.size(); }
    int num_symbols() const { return symbols.size(); }
    bool halting(int q) const { return accepting[q] || rejecting[q]; }
    std::vector<int> input_symbols() const;  // ids at level 0, in id order
    std::vector<int> symbols_at(int lvl) const;

    int add_state(const std::string& name, bool acc = false, bool rej = false);
    int add_symbol(const std::string& name, int lvl);
    void add(int from, int read, int to, int write, int dir, Rational prob = 1);
    void add(const std::string& from, const std::string& read, const std::string& to,
             const std::string& write, int dir, Rational prob = 1);

    // Transition ids grouped by (state, read symbol), each group in id order.
    std::vector<std::vector<int>> index() const;

    bool operator==(const LimitedAutomaton&) const = default;
};

struct PdaTransition {
    int from = 0;
    int read = 0;  // input id, left_read(), right_read() or kReadLambda
    int top = 0;
    int to = 0;
    std::vector<int> push;  // push[0] becomes the new top
    Rational prob = 1;
    bool operator==(const PdaTransition&) const = default;
};

inline constexpr int kReadLambda = -1;

struct PushdownAutomaton {
    NameTable states;
    NameTable input;  // Σ only
    NameTable stack;  // id 0 is the bottom marker
    int push_size = 2;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<char> rejecting;
    std::vector<PdaTransition> transitions;
    bool claims_unambiguous = false;

    static PushdownAutomaton with_input(const std::vector<std::string>& input,
                                        const std::string& bottom = "⊥");

    int num_states() const { return states.size(); }
    int left_read() const { return input.size(); }
    int right_read() const { return input.size() + 1; }
    int num_reads() const { return input.size() + 2; }  // Σ̌
    bool halting(int q) const { return accepting[q] || rejecting[q]; }
    std::string read_name(int read) const;
    int read_id(const std::string& name) const;  // -2 if unknown

    int add_state(const std::string& name, bool acc = false, bool rej = false);
    int add_stack_symbol(const std::string& name) { return stack.add(name); }
    void add(int from, int read, int top, int to, std::vector<int> push, Rational prob = 1);
    // push is a space-separated list of stack symbol names, top first.
    void add(const std::string& from, const std::string& read, const std::string& top,
             const std::string& to, const std::string& push, Rational prob = 1);
    std::vector<int> parse_push(const std::string& text) const;
    std::string format_push(const std::vector<int>& push) const;

    // Transition ids grouped by (state, read + 1, top); read + 1 maps λ to 0.
    std::vector<std::vector<int>> index() const;
    int index_key(int q, int read, int top) const {
        return (q * (num_reads() + 1) + (read + 1)) * stack.size() + top;
    }

    bool operator==(const PushdownAutomaton&) const = default;
};

struct Dfa {
    NameTable states;
    NameTable input;
    std::vector<std::vector<int>> next;  // next[q][a], -1 if missing
    int start = 0;
    std::vector<char> accepting;

    int add_state(const std::string& name, bool acc = false);
    void set(const std::string& from, const std::string& read, const std::string& to);
    bool accepts(const Word& w) const;

    bool operator==(const Dfa&) const = default;
};

struct TransducerTransition {
    int from = 0;
    int read = 0;     // input id, left_read() or right_read()
    int to = 0;
    int output = -1;  // output id, -1 writes nothing
    bool operator==(const TransducerTransition&) const = default;
};

// Real-time nondeterministic transducer with write-once output. Reads
// |c x $ left to right, one transition per cell; output is valid only on
// paths that end in an accepting state.
struct RtTransducer {
    NameTable states;
    NameTable input;
    NameTable output;
    int initial = 0;
    std::vector<char> accepting;
    std::vector<char> rejecting;
    std::vector<TransducerTransition> transitions;

    static RtTransducer with_alphabets(const std::vector<std::string>& input,
                                       const std::vector<std::string>& output);

    int num_states() const { return states.size(); }
    int left_read() const { return input.size(); }
    int right_read() const { return input.size() + 1; }
    std::string read_name(int read) const;
    int read_id(const std::string& name) const;

    int add_state(const std::string& name, bool acc = false, bool rej = false);
    void add(int from, int read, int to, int output);
    void add(const std::string& from, const std::string& read, const std::string& to,
             const std::string& output);

    std::vector<std::vector<int>> index() const;  // by (state, read)

    bool operator==(const RtTransducer&) const = default;
};

using AnyMachine = std::variant<LimitedAutomaton, PushdownAutomaton, Dfa, RtTransducer>;

// Input alphabet names of a limited machine or PDA, in id order.
std::vector<std::string> input_alphabet(const LimitedAutomaton& m);
std::vector<std::string> input_alphabet(const PushdownAutomaton& m);

// All words over sigma of length <= n, ordered by length then lexicographically
// by alphabet position.
std::vector<Word> words_upto(const std::vector<std::string>& sigma, int n);
std::vector<Word> words_of_length(const std::vector<std::string>& sigma, int n);

}  // namespace limaut
