#include "nusys/lsystem.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "nusys/detail/system_text.hpp"
#include "nusys/error.hpp"

namespace nusys {

namespace {

constexpr std::size_t kMaxTableCells = std::size_t{1} << 26;

// Smallest k with 2^k >= n.
std::uint64_t ceil_lg(Length n) {
    std::uint64_t k = 0;
    while (k < 63 && (Length{1} << k) < n)
        ++k;
    return k;
}

char emitted_byte(const SymbolTable& vars, SymbolId a) {
    const auto& name = vars.name(a);
    if (name.size() != 1)
        throw ValidityError("symbol '" + name + "' is emitted but is not a single byte");
    return name[0];
}

}  // namespace

LevelLengths::LevelLengths(const std::vector<Word>& rules, std::uint64_t depth, Length cap) : cap_(cap) {
    rows_.emplace_back(rules.size(), std::min<Length>(1, cap));
    for (std::uint64_t l = 1; l <= depth; ++l) {
        const auto& prev = rows_.back();
        std::vector<Length> row(rules.size(), 0);
        for (std::size_t a = 0; a < rules.size(); ++a)
            for (SymbolId b : rules[a])
                row[a] = saturating_add(row[a], prev[b], cap);
        if (row == prev)
            break;
        if ((rows_.size() + 1) * std::max<std::size_t>(rules.size(), 1) > kMaxTableCells)
            throw LimitError("level length table exceeds " + std::to_string(kMaxTableCells) + " cells");
        rows_.push_back(std::move(row));
    }
}

Length LevelLengths::at(SymbolId a, std::uint64_t level) const {
    const auto& row = level < rows_.size() ? rows_[level] : rows_.back();
    return row[a];
}

Length LevelLengths::of(const Word& w, std::uint64_t level) const {
    Length total = 0;
    for (SymbolId a : w)
        total = saturating_add(total, at(a, level), cap_);
    return total;
}

LSystem::LSystem(SymbolTable variables, std::vector<Word> rules, Word axiom, std::vector<SymbolId> coding,
                 std::uint64_t depth, std::optional<Length> length)
    : variables_(std::move(variables)), rules_(std::move(rules)), axiom_(std::move(axiom)),
      coding_(std::move(coding)), depth_(depth) {
    const std::size_t nv = variables_.size();
    if (rules_.size() != nv)
        throw ValidityError("L-system needs exactly one rule per variable");
    if (axiom_.empty())
        throw ValidityError("L-system axiom must not be empty");
    if (coding_.empty()) {
        coding_.resize(nv);
        for (SymbolId a = 0; a < nv; ++a)
            coding_[a] = a;
    }
    if (coding_.size() != nv)
        throw ValidityError("coding must map every variable");
    auto check = [&](SymbolId a, const std::string& where) {
        if (a >= nv)
            throw ValidityError(where + " references an unknown variable");
    };
    for (SymbolId a = 0; a < nv; ++a) {
        if (rules_[a].empty())
            throw ValidityError("rule for '" + variables_.name(a) + "' is empty (L-systems are non-erasing)");
        for (SymbolId b : rules_[a])
            check(b, "rule for '" + variables_.name(a) + "'");
        check(coding_[a], "coding");
    }
    for (SymbolId a : axiom_)
        check(a, "axiom");

    if (length) {
        const LevelLengths lens(rules_, depth_, *length);
        if (lens.of(axiom_, depth_) < *length)
            throw ValidityError("length " + std::to_string(*length) + " exceeds |L_d|");
        length_ = *length;
    } else {
        const LevelLengths lens(rules_, depth_, kMaxLength + 1);
        const Length full = lens.of(axiom_, depth_);
        if (full > kMaxLength)
            throw OverflowError("|L_d| exceeds 2^63-1; give an explicit length");
        length_ = full;
    }
}

std::uint64_t size(const LSystem& l) {
    std::uint64_t total = l.axiom().size();
    for (const auto& r : l.rules())
        total += r.size();
    return total;
}

std::vector<std::vector<Length>> level_lengths(const LSystem& l) {
    const Length cap = l.length() + 1;
    const LevelLengths lens(l.rules(), l.depth(), cap);
    const std::size_t nv = l.rules().size();
    if (l.depth() >= kMaxTableCells / std::max<std::size_t>(nv, 1))
        throw LimitError("level length table for depth " + std::to_string(l.depth()) + " is too large");
    std::vector<std::vector<Length>> rows(l.depth() + 1, std::vector<Length>(nv));
    for (std::uint64_t lv = 0; lv <= l.depth(); ++lv)
        for (SymbolId a = 0; a < nv; ++a)
            rows[lv][a] = lens.at(a, lv);
    return rows;
}

SymbolId first_symbol_after(const std::vector<Word>& rules, SymbolId a, std::uint64_t levels) {
    constexpr auto kUnseen = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> seen(rules.size(), kUnseen);
    for (std::uint64_t step = 0; step < levels; ++step) {
        if (seen[a] != kUnseen) {
            const std::uint64_t period = step - seen[a];
            for (std::uint64_t r = (levels - step) % period; r > 0; --r)
                a = rules[a].front();
            return a;
        }
        seen[a] = step;
        a = rules[a].front();
    }
    return a;
}

Text generate(const LSystem& l) {
    const Length n = l.length();
    require_materializable(n, "L-system output");
    const LevelLengths lens(l.rules(), l.depth(), n + 1);
    const auto& rules = l.rules();
    auto emit_symbol = [&](SymbolId a) { return emitted_byte(l.variables(), l.coding()[a]); };

    Text out;
    out.reserve(n);
    struct Frame {
        SymbolId sym;
        std::uint64_t remaining;  // levels still to expand
        std::size_t next;
    };
    std::vector<Frame> stack;
    for (SymbolId a : l.axiom()) {
        if (out.size() == n)
            break;
        stack.push_back({a, l.depth(), 0});
        while (!stack.empty() && out.size() < n) {
            auto& top = stack.back();
            if (top.remaining == 0) {
                out.push_back(emit_symbol(top.sym));
                stack.pop_back();
                continue;
            }
            if (top.next == 0 && lens.at(top.sym, top.remaining) == 1) {
                out.push_back(emit_symbol(first_symbol_after(rules, top.sym, top.remaining)));
                stack.pop_back();
                continue;
            }
            const auto& rule = rules[top.sym];
            if (top.next == rule.size()) {
                stack.pop_back();
                continue;
            }
            const SymbolId child = rule[top.next++];
            const std::uint64_t below = top.remaining - 1;
            stack.push_back({child, below, 0});
        }
        stack.clear();
    }
    return out;
}

MorphismProfile profile(const std::vector<Word>& rules) {
    MorphismProfile p;
    p.depth = rules.size();
    p.expanding = !rules.empty();
    p.non_erasing = true;
    std::optional<std::size_t> common;
    bool uniform = true;
    for (SymbolId a = 0; a < rules.size(); ++a) {
        const auto& r = rules[a];
        p.width = std::max(p.width, r.size());
        p.size += r.size();
        if (r.size() <= 1)
            p.expanding = false;
        if (r.empty())
            p.non_erasing = false;
        if (!common)
            common = r.size();
        else if (*common != r.size())
            uniform = false;
        if (r.size() >= 2 && r.front() == a)
            p.prolongable_on.push_back(a);
    }
    if (uniform && common)
        p.uniform_k = common;
    p.coding = p.uniform_k == std::size_t{1};
    return p;
}

namespace {

std::string grammar_base_name(const std::string& name) {
    bool plain = is_valid_symbol_name(name) && name.front() != '#' && name.front() != '\\';
    for (char c : name)
        plain = plain && static_cast<unsigned char>(c) > 0x20 && static_cast<unsigned char>(c) < 0x7f;
    if (plain)
        return name;
    std::string out = "x";
    for (char c : name) {
        const auto u = static_cast<unsigned char>(c);
        out += "0123456789abcdef"[u >> 4];
        out += "0123456789abcdef"[u & 0xf];
    }
    return out;
}

class GrammarBuilder {
public:
    GrammarBuilder(const LSystem& l, std::uint64_t depth, Length cap)
        : l_(l), depth_(depth), lens_(l.rules(), depth, cap) {}

    // |A| at level i of the derivation, in output symbols.
    Length span(SymbolId a, std::uint64_t level) const { return lens_.at(a, depth_ - level); }

    // Symbol for A at level i covering all of its expansion.
    GrammarSymbol full(SymbolId a, std::uint64_t level) {
        if (level == depth_)
            return terminal(a);
        struct Frame {
            SymbolId sym;
            std::uint64_t level;
            std::size_t next;
        };
        if (auto it = full_.find(key(a, level)); it != full_.end())
            return GrammarSymbol::rule(it->second);
        std::vector<Frame> stack{{a, level, 0}};
        while (!stack.empty()) {
            auto& top = stack.back();
            const auto& rule = l_.rules()[top.sym];
            if (top.level + 1 < depth_) {
                while (top.next < rule.size() && full_.count(key(rule[top.next], top.level + 1)))
                    ++top.next;
                if (top.next < rule.size()) {
                    const Frame child{rule[top.next], top.level + 1, 0};
                    stack.push_back(child);
                    continue;
                }
            }
            std::vector<GrammarSymbol> rhs;
            for (SymbolId b : rule)
                rhs.push_back(top.level + 1 == depth_ ? terminal(b)
                                                      : GrammarSymbol::rule(full_.at(key(b, top.level + 1))));
            const auto id = add(name_of(top.sym, top.level, ""), std::move(rhs));
            full_.emplace(key(top.sym, top.level), id);
            stack.pop_back();
        }
        return GrammarSymbol::rule(full_.at(key(a, level)));
    }

    // Right-hand side covering the first `need` symbols of `word` placed at `level`.
    std::vector<GrammarSymbol> prefix(const Word& word, std::uint64_t level, Length need) {
        struct Cut {
            std::vector<GrammarSymbol> head;
            SymbolId sym;
            std::uint64_t level;
            bool partial;
        };
        std::vector<Cut> spine;
        const Word* w = &word;
        std::uint64_t lv = level;
        SymbolId owner = 0;
        while (true) {
            Cut cut{{}, owner, lv, false};
            for (SymbolId b : *w) {
                const Length len = span(b, lv);
                if (len < need) {
                    cut.head.push_back(full(b, lv));
                    need -= len;
                    continue;
                }
                if (len == need) {
                    cut.head.push_back(full(b, lv));
                    need = 0;
                } else {
                    cut.sym = b;
                    cut.partial = true;
                }
                break;
            }
            spine.push_back(std::move(cut));
            if (!spine.back().partial)
                break;
            owner = spine.back().sym;
            w = &l_.rules()[owner];
            ++lv;
        }
        // Build bottom-up: each partial child becomes a rule, or is inlined
        // when its cut consists of a single symbol.
        std::optional<GrammarSymbol> tail;
        for (std::size_t k = spine.size(); k-- > 1;) {
            auto rhs = std::move(spine[k].head);
            if (tail)
                rhs.push_back(*tail);
            if (rhs.size() == 1) {
                tail = rhs.front();
                continue;
            }
            const auto& parent = spine[k - 1];
            tail = GrammarSymbol::rule(add(name_of(parent.sym, parent.level, "p"), std::move(rhs)));
        }
        auto rhs = std::move(spine.front().head);
        if (tail)
            rhs.push_back(*tail);
        return rhs;
    }

    std::uint32_t add(std::string name, std::vector<GrammarSymbol> rhs) {
        names_.intern(name);
        rules_.push_back({std::move(name), std::move(rhs)});
        return static_cast<std::uint32_t>(rules_.size() - 1);
    }

    std::string fresh(std::string base) const { return names_.fresh_name(std::move(base)); }

    Grammar finish() {
        std::sort(terminals_.begin(), terminals_.end());
        return Grammar(std::move(terminals_), std::move(rules_));
    }

private:
    static std::uint64_t key(SymbolId a, std::uint64_t level) { return (level << 32) | a; }

    std::string name_of(SymbolId a, std::uint64_t level, const char* suffix) const {
        return names_.fresh_name(grammar_base_name(l_.variables().name(a)) + "_" + std::to_string(level) + suffix);
    }

    GrammarSymbol terminal(SymbolId a) {
        const char c = emitted_byte(l_.variables(), l_.coding()[a]);
        if (terminals_.find(c) == std::string::npos)
            terminals_.push_back(c);
        return GrammarSymbol::term(c);
    }

    const LSystem& l_;
    std::uint64_t depth_;
    LevelLengths lens_;
    std::unordered_map<std::uint64_t, std::uint32_t> full_;
    std::vector<GrammarRule> rules_;
    SymbolTable names_;
    std::string terminals_;
};

}  // namespace

Grammar to_grammar(const LSystem& l) {
    const Length n = l.length();
    if (n == 0)
        throw ValidityError("cannot build a grammar for an empty string");
    Word axiom = l.axiom();
    std::uint64_t depth = l.depth();
    const std::uint64_t k = ceil_lg(n);
    if (profile(l).expanding && depth > k) {
        axiom = {first_symbol_after(l.rules(), axiom.front(), depth - k)};
        depth = k;
    }
    if (depth >= (std::uint64_t{1} << 32))
        throw LimitError("depth too large for a level-indexed grammar");

    GrammarBuilder b(l, depth, n + 1);
    auto rhs = b.prefix(axiom, 0, n);
    b.add(b.fresh("S'"), std::move(rhs));
    return b.finish();
}

LSystem from_grammar(const Grammar& g) {
    SymbolTable vars;
    const auto& rules = g.rules();
    for (std::size_t k = 0; k + 1 < rules.size(); ++k)
        vars.intern(rules[k].name);
    std::vector<SymbolId> term_id(256, 0);
    std::vector<bool> used(256, false);
    for (const auto& r : rules)
        for (const auto& s : r.rhs)
            if (s.terminal)
                used[s.id] = true;
    for (unsigned c = 0; c < 256; ++c)
        if (used[c]) {
            const std::string name(1, static_cast<char>(c));
            if (vars.find(name))
                throw ValidityError("nonterminal '" + name + "' has the same name as a terminal");
            term_id[c] = vars.intern(name);
        }

    auto map_word = [&](const std::vector<GrammarSymbol>& rhs) {
        Word w;
        for (const auto& s : rhs)
            w.push_back(s.terminal ? term_id[s.id] : static_cast<SymbolId>(s.id));
        return w;
    };
    std::vector<Word> out(vars.size());
    for (std::size_t k = 0; k + 1 < rules.size(); ++k)
        out[k] = map_word(rules[k].rhs);
    for (unsigned c = 0; c < 256; ++c)
        if (used[c])
            out[term_id[c]] = {term_id[c]};
    Word axiom = map_word(rules.back().rhs);
    return LSystem(std::move(vars), std::move(out), std::move(axiom), {}, height(g) - 1, g.expansion_length());
}

LSystem delta_sep_system(std::uint64_t depth) {
    if (depth > 61)
        throw OverflowError("delta-sep length 2^{d+1}-1 exceeds 2^63-1 for d > 61");
    SymbolTable vars({"0", "1"});
    return LSystem(std::move(vars), {{0, 0, 1}, {1}}, {0}, {}, depth, (Length{1} << (depth + 1)) - 1);
}

LSystem thue_morse_system(std::uint64_t depth) {
    if (depth > 62)
        throw OverflowError("Thue-Morse length 2^d exceeds 2^63-1 for d > 62");
    SymbolTable vars({"0", "1"});
    return LSystem(std::move(vars), {{0, 1}, {1, 0}}, {0}, {}, depth, Length{1} << depth);
}

LSystem custom_morphism_system(const MorphismSpec& spec) {
    SymbolTable vars;
    for (const auto& [name, image] : spec.rules)
        vars.intern(name);
    auto lookup = [&](const std::string& name, const char* where) {
        const auto id = vars.find(name);
        if (!id)
            throw ValidityError(std::string(where) + " uses '" + name + "', which has no rule");
        return *id;
    };
    std::vector<Word> rules(vars.size());
    for (const auto& [name, image] : spec.rules)
        for (const auto& s : image)
            rules[vars.at(name)].push_back(lookup(s, "a rule"));
    Word axiom;
    for (const auto& s : spec.axiom)
        axiom.push_back(lookup(s, "the axiom"));
    std::vector<SymbolId> coding(vars.size());
    for (SymbolId a = 0; a < vars.size(); ++a)
        coding[a] = a;
    for (const auto& [from, to] : spec.coding)
        coding[lookup(from, "the coding")] = lookup(to, "the coding");
    return LSystem(std::move(vars), std::move(rules), std::move(axiom), std::move(coding), spec.depth, spec.length);
}

LSystem make_family(std::string_view name, std::uint64_t depth, const MorphismSpec& custom) {
    if (name == "delta-sep")
        return delta_sep_system(depth);
    if (name == "thue-morse")
        return thue_morse_system(depth);
    if (name == "custom-morphism") {
        MorphismSpec spec = custom;
        spec.depth = depth;
        return custom_morphism_system(spec);
    }
    throw std::invalid_argument("unknown family '" + std::string(name) +
                                "' (expected delta-sep, thue-morse or custom-morphism)");
}

LSystem parse_lsystem(std::string_view text) {
    const auto st = detail::parse_system_text(text, "lsystem");
    SymbolTable vars;
    for (const auto& r : st.rules) {
        const auto name = detail::symbol_name(r.lhs, r.line);
        if (vars.find(name))
            throw ParseError(r.line, r.lhs.column, "variable '" + name + "' has two rules");
        vars.intern(name);
    }
    auto lookup = [&](const detail::Token& tok, std::size_t line) {
        const auto id = vars.find(detail::symbol_name(tok, line));
        if (!id)
            throw ParseError(line, tok.column, "symbol '" + std::string(tok.text) + "' has no rule");
        return *id;
    };
    std::vector<Word> rules(vars.size());
    for (std::size_t k = 0; k < st.rules.size(); ++k)
        for (const auto& tok : st.rules[k].rhs)
            rules[k].push_back(lookup(tok, st.rules[k].line));
    Word axiom;
    for (const auto& tok : st.axiom)
        axiom.push_back(lookup(tok, st.axiom_line));
    std::vector<SymbolId> coding(vars.size());
    std::vector<bool> coded(vars.size(), false);
    for (SymbolId a = 0; a < vars.size(); ++a)
        coding[a] = a;
    for (const auto& c : st.coding) {
        const auto from = lookup(c.from, c.line);
        if (coded[from])
            throw ParseError(c.line, c.from.column, "coding maps '" + std::string(c.from.text) + "' twice");
        coded[from] = true;
        coding[from] = lookup(c.to, c.line);
    }
    return LSystem(std::move(vars), std::move(rules), std::move(axiom), std::move(coding), *st.depth, st.length);
}

std::string to_text(const LSystem& l) {
    const auto& vars = l.variables();
    auto name = [&](SymbolId a) { return detail::format_symbol_name(vars.name(a)); };
    std::string out = "lsystem\naxiom:";
    for (SymbolId a : l.axiom())
        out += " " + name(a);
    out += "\ndepth: " + std::to_string(l.depth()) + "\nlength: " + std::to_string(l.length()) + "\n";
    std::string coding;
    for (SymbolId a = 0; a < vars.size(); ++a)
        if (l.coding()[a] != a)
            coding += " " + name(a) + "->" + name(l.coding()[a]);
    if (!coding.empty())
        out += "coding:" + coding + "\n";
    for (SymbolId a = 0; a < vars.size(); ++a) {
        out += "rule: " + name(a) + " ->";
        for (SymbolId b : l.rules()[a])
            out += " " + name(b);
        out += "\n";
    }
    return out;
}

}  // namespace nusys
