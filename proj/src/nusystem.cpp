#include "nusys/nusystem.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "nusys/detail/large_stack.hpp"
#include "nusys/detail/system_text.hpp"
#include "nusys/error.hpp"

namespace nusys {

namespace {

constexpr std::size_t kMaxTableCells = std::size_t{1} << 22;
constexpr Length kMaxContentRange = Length{1} << 26;

struct Range {
    SymbolId var;
    std::uint64_t level;
    Length first;
    Length last;
};

struct Key3 {
    SymbolId a;
    std::uint64_t l;
    Length r;
    friend bool operator==(const Key3&, const Key3&) = default;
};

struct Key3Hash {
    std::size_t operator()(const Key3& k) const noexcept {
        std::uint64_t h = k.r * 0x9e3779b97f4a7c15ULL;
        h ^= (k.l + 0x632be59bd9b4e019ULL) + (h << 6) + (h >> 2);
        h ^= (std::uint64_t{k.a} + 0x94d049bb133111ebULL) + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

struct ContentKey {
    const NuSymbol* sym;
    std::uint64_t m;
    friend bool operator==(const ContentKey&, const ContentKey&) = default;
};

struct ContentKeyHash {
    std::size_t operator()(const ContentKey& k) const noexcept {
        return std::hash<const void*>{}(k.sym) ^ (k.m * 0x9e3779b97f4a7c15ULL);
    }
};

std::string describe(const SymbolTable& vars, SymbolId a, std::uint64_t l, Length r) {
    return vars.name(a) + "(" + std::to_string(l) + ")[" + std::to_string(r) + "]";
}

// Lengths and single-position resolution for one system.
//
// Every level string a_l (and every extraction expanded m more levels) is a
// cell holding prefix sums over its finished children. Cells grow only as far
// as a request needs, so a position can be looked up inside a level whose
// total is still unknown (S -> A S(2)[1,4] reads S_2[1..4] while summing
// |S_2|). A request that repeats a pending request on the same cell, or asks
// for more, is a genuine loop. Mutually recursive; run it on a large stack.
class Evaluator {
public:
    Evaluator(const SymbolTable& vars, const std::vector<NuWord>& rules, const std::vector<SymbolId>& coding,
              std::uint64_t top_level)
        : vars_(vars), rules_(rules), coding_(coding), width_(top_level + 1) {
        if (top_level >= kMaxTableCells || rules.size() > kMaxTableCells / width_)
            throw LimitError("NU-system length table for " + std::to_string(rules.size()) + " variables and " +
                             std::to_string(width_) + " levels is too large");
        cells_.resize(rules.size() * width_);
    }

    // |a_l|.
    Length length(SymbolId a, std::uint64_t l) {
        if (l == 0)
            return 1;
        return complete(var_cell(a, l));
    }

    // |V(c, m)|: the length contributed by c expanded for m levels.
    Length symbol_length(const NuSymbol& c, std::uint64_t m) {
        if (const auto* v = std::get_if<NuVariable>(&c))
            return length(v->var, m);
        if (m == 0)
            return count(range_of(c));
        return complete(ext_cell(c, m));
    }

    Length word_length(const NuWord& w, std::uint64_t m) {
        Length total = 0;
        for (const auto& c : w)
            total = checked_add(total, symbol_length(c, m), "NU-system level length");
        return total;
    }

    Range range_of(const NuSymbol& c) {
        if (const auto* e = std::get_if<NuExtraction>(&c))
            return {e->var, e->level, e->first, e->last};
        const auto& w = std::get<NuLevel>(c);
        return {w.var, w.level, 1, length(w.var, w.level)};
    }

    // Symbol at position r of a_l, before coding.
    SymbolId resolve(SymbolId a, std::uint64_t l, Length r) {
        std::vector<Key3> path;
        SymbolId result = 0;
        while (true) {
            const Key3 key{a, l, r};
            if (auto it = memo_.find(key); it != memo_.end()) {
                if (it->second == kOpen)
                    throw CycleError("no unique solution: " + describe(vars_, a, l, r) + " depends on itself");
                result = it->second;
                break;
            }
            memo_.emplace(key, kOpen);
            path.push_back(key);
            if (l == 0) {
                if (r != 1)
                    throw ValidityError("position " + describe(vars_, a, l, r) + " is out of range");
                result = a;
                break;
            }
            const std::uint64_t m = l - 1;
            const auto [s, q] = locate(var_cell(a, l), r, [&] { return describe(vars_, a, l, r); });
            const NuSymbol& child = rules_[a][s];
            if (const auto* v = std::get_if<NuVariable>(&child)) {
                a = v->var;
                l = m;
                r = q;
                continue;
            }
            const Range rg = range_of(child);
            if (m == 0) {
                result = coding_[resolve(rg.var, rg.level, rg.first + q - 1)];
                break;
            }
            const auto [t, rest] = locate(ext_cell(child, m), q, [&] { return describe(vars_, a, l, r); });
            a = coding_[resolve(rg.var, rg.level, rg.first + t)];
            r = rest;
            l = m;
        }
        for (const auto& k : path)
            memo_[k] = result;
        return result;
    }

private:
    static constexpr SymbolId kOpen = std::numeric_limits<SymbolId>::max();
    static constexpr Length kAll = kMaxLength + 1;
    static constexpr std::size_t kMaxNesting = 200000;

    struct Cell {
        bool ready = false;
        bool is_ext = false;
        SymbolId var = 0;   // level cell: the variable
        Range range{};      // extraction cell: what is extracted
        std::uint64_t level = 0;  // level of the string, or levels still to expand
        std::size_t children = 0;
        std::vector<Length> off{0};  // prefix sums over finished children
        std::vector<Length> pending;  // needs of active requests, decreasing
        bool complete() const { return off.size() == children + 1; }
    };

    static Length count(const Range& rg) { return rg.last - rg.first + 1; }

    Cell& var_cell(SymbolId a, std::uint64_t l) {
        Cell& c = cells_[a * width_ + l];
        if (!c.ready) {
            c.ready = true;
            c.var = a;
            c.level = l;
            c.children = rules_[a].size();
        }
        return c;
    }

    Cell& ext_cell(const NuSymbol& sym, std::uint64_t m) {
        Cell& c = content_[ContentKey{&sym, m}];
        if (!c.ready) {
            const Range rg = range_of(sym);
            if (count(rg) > kMaxContentRange)
                throw LimitError("extraction of " + std::to_string(count(rg)) +
                                 " symbols is too long to expand further");
            c.ready = true;
            c.is_ext = true;
            c.range = rg;
            c.level = m;
            c.children = static_cast<std::size_t>(count(rg));
        }
        return c;
    }

    // (finished, length): the exact length when finished, otherwise the
    // child is known to have at least `need` symbols.
    std::pair<bool, Length> probe_variable(SymbolId b, std::uint64_t m, Length need) {
        if (m == 0)
            return {true, 1};
        Cell& c = var_cell(b, m);
        grow(c, need);
        return {c.complete(), c.off.back()};
    }

    std::pair<bool, Length> probe_child(Cell& cell, std::size_t k, Length need) {
        if (cell.is_ext) {
            const SymbolId x = coding_[resolve(cell.range.var, cell.range.level, cell.range.first + k)];
            return probe_variable(x, cell.level, need);
        }
        const NuSymbol& child = rules_[cell.var][k];
        const std::uint64_t m = cell.level - 1;
        if (const auto* v = std::get_if<NuVariable>(&child))
            return probe_variable(v->var, m, need);
        if (m == 0)
            return {true, count(range_of(child))};
        Cell& c = ext_cell(child, m);
        grow(c, need);
        return {c.complete(), c.off.back()};
    }

    // Finish children until the prefix covers `need`, the cell is complete, or
    // the current child is known to reach `need`.
    void grow(Cell& cell, Length need) {
        if (cell.off.back() >= need || cell.complete())
            return;
        if (!cell.pending.empty() && cell.pending.back() <= need)
            throw ValidityError("invalid NU-system: the length of " + describe_cell(cell) + " depends on itself");
        if (++nesting_ > kMaxNesting)
            throw LimitError("NU-system evaluation nests deeper than " + std::to_string(kMaxNesting) + " levels");
        cell.pending.push_back(need);
        try {
            while (cell.off.back() < need && !cell.complete()) {
                const auto [finished, len] = probe_child(cell, cell.off.size() - 1, need - cell.off.back());
                if (!finished)
                    break;
                cell.off.push_back(checked_add(cell.off.back(), len, "NU-system level length"));
            }
        } catch (...) {
            cell.pending.pop_back();
            --nesting_;
            throw;
        }
        cell.pending.pop_back();
        --nesting_;
    }

    Length complete(Cell& cell) {
        grow(cell, kAll);
        return cell.off.back();
    }

    // Child index (0-based) covering position r and the 1-based position inside it.
    template <class Describe>
    std::pair<std::size_t, Length> locate(Cell& cell, Length r, Describe&& what) {
        grow(cell, r);
        const auto& off = cell.off;
        if (off.back() < r) {
            if (cell.complete())
                throw ValidityError("position " + what() + " is out of range (length " + std::to_string(off.back()) +
                                    ")");
            return {off.size() - 1, r - off.back()};
        }
        const auto s = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), r - 1) - off.begin()) - 1;
        return {s, r - off[s]};
    }

    std::string describe_cell(const Cell& c) const {
        if (!c.is_ext)
            return "|" + vars_.name(c.var) + "_" + std::to_string(c.level) + "|";
        return "extraction " + vars_.name(c.range.var) + "(" + std::to_string(c.range.level) + ")[" +
               std::to_string(c.range.first) + "," + std::to_string(c.range.last) + "]";
    }

    const SymbolTable& vars_;
    const std::vector<NuWord>& rules_;
    const std::vector<SymbolId>& coding_;
    std::size_t width_;
    std::vector<Cell> cells_;
    std::unordered_map<Key3, SymbolId, Key3Hash> memo_;
    std::unordered_map<ContentKey, Cell, ContentKeyHash> content_;
    std::size_t nesting_ = 0;
};

std::uint64_t top_level(std::uint64_t max_level, std::uint64_t depth) { return std::max(max_level, depth); }

class Emitter {
public:
    Emitter(const NUSystem& n, Evaluator& ev, Text& out) : n_(n), ev_(ev), out_(out) {}

    void word(const NuWord& w, std::uint64_t m) {
        for (const auto& c : w) {
            if (done())
                return;
            symbol(c, m);
        }
    }

private:
    bool done() const { return out_.size() >= n_.length(); }

    void symbol(const NuSymbol& c, std::uint64_t m) {
        if (const auto* v = std::get_if<NuVariable>(&c)) {
            variable(v->var, m);
            return;
        }
        const Range rg = ev_.range_of(c);
        for (Length t = rg.first; t <= rg.last && !done(); ++t)
            variable(n_.coding()[ev_.resolve(rg.var, rg.level, t)], m);
    }

    void variable(SymbolId a, std::uint64_t m) {
        if (m == 0) {
            const auto& name = n_.variables().name(n_.coding()[a]);
            if (name.size() != 1)
                throw ValidityError("symbol '" + name + "' is emitted but is not a single byte");
            out_.push_back(name[0]);
            return;
        }
        word(n_.rules()[a], m - 1);
    }

    const NUSystem& n_;
    Evaluator& ev_;
    Text& out_;
};

}  // namespace

NUSystem::NUSystem(SymbolTable variables, std::vector<NuWord> rules, NuWord axiom, std::vector<SymbolId> coding,
                   std::uint64_t depth, std::optional<Length> length)
    : variables_(std::move(variables)), rules_(std::move(rules)), axiom_(std::move(axiom)),
      coding_(std::move(coding)), depth_(depth) {
    const std::size_t nv = variables_.size();
    if (rules_.size() != nv)
        throw ValidityError("NU-system needs exactly one rule per variable");
    if (axiom_.empty())
        throw ValidityError("NU-system axiom must not be empty");
    if (coding_.empty()) {
        coding_.resize(nv);
        for (SymbolId a = 0; a < nv; ++a)
            coding_[a] = a;
    }
    if (coding_.size() != nv)
        throw ValidityError("coding must map every variable");
    for (SymbolId a = 0; a < nv; ++a)
        if (coding_[a] >= nv)
            throw ValidityError("coding references an unknown variable");

    auto check_word = [&](const NuWord& w, const std::string& where) {
        for (const auto& c : w) {
            SymbolId target = 0;
            if (const auto* v = std::get_if<NuVariable>(&c)) {
                target = v->var;
            } else if (const auto* e = std::get_if<NuExtraction>(&c)) {
                target = e->var;
                if (e->first == 0 || e->first > e->last)
                    throw ValidityError(where + " has an extraction with an empty or zero-based range");
                max_level_ = std::max(max_level_, e->level);
            } else {
                const auto& lv = std::get<NuLevel>(c);
                target = lv.var;
                max_level_ = std::max(max_level_, lv.level);
            }
            if (target >= nv)
                throw ValidityError(where + " references an unknown variable");
        }
    };
    for (SymbolId a = 0; a < nv; ++a) {
        if (rules_[a].empty())
            throw ValidityError("rule for '" + variables_.name(a) + "' is empty");
        check_word(rules_[a], "rule for '" + variables_.name(a) + "'");
    }
    check_word(axiom_, "axiom");

    Length full = 0;
    std::vector<std::pair<NuSymbol*, NuExtraction>> rewrites;
    detail::run_on_large_stack([&] {
        Evaluator ev(variables_, rules_, coding_, top_level(max_level_, depth_));
        full = ev.word_length(axiom_, depth_);
        auto visit = [&](NuWord& w) {
            for (auto& c : w) {
                if (std::holds_alternative<NuVariable>(c))
                    continue;
                const Range rg = ev.range_of(c);
                const Length have = ev.length(rg.var, rg.level);
                if (rg.last > have)
                    throw ValidityError("extraction " + variables_.name(rg.var) + "(" + std::to_string(rg.level) +
                                        ")[" + std::to_string(rg.first) + "," + std::to_string(rg.last) +
                                        "] exceeds |" + variables_.name(rg.var) + "_" + std::to_string(rg.level) +
                                        "| = " + std::to_string(have));
                if (std::holds_alternative<NuLevel>(c))
                    rewrites.emplace_back(&c, NuExtraction{rg.var, rg.level, rg.first, rg.last});
            }
        };
        for (auto& r : rules_)
            visit(r);
        visit(axiom_);
    });
    for (auto& [slot, e] : rewrites)
        *slot = e;

    if (length && *length > full)
        throw ValidityError("length " + std::to_string(*length) + " exceeds |L_d| = " + std::to_string(full));
    length_ = length.value_or(full);
}

std::uint64_t size(const NUSystem& n) {
    std::uint64_t total = n.axiom().size();
    for (const auto& r : n.rules())
        total += r.size();
    return total;
}

std::vector<std::vector<Length>> level_lengths(const NUSystem& n) {
    return detail::run_on_large_stack([&] {
        const auto top = top_level(n.max_level(), n.depth());
        Evaluator ev(n.variables(), n.rules(), n.coding(), top);
        std::vector<std::vector<Length>> rows(top + 1, std::vector<Length>(n.variables().size()));
        for (std::uint64_t l = 0; l <= top; ++l)
            for (SymbolId a = 0; a < n.variables().size(); ++a)
                rows[l][a] = ev.length(a, l);
        return rows;
    });
}

Text expand(const NUSystem& n) {
    require_materializable(n.length(), "NU-system output");
    return detail::run_on_large_stack([&] {
        Evaluator ev(n.variables(), n.rules(), n.coding(), top_level(n.max_level(), n.depth()));
        Text out;
        out.reserve(n.length());
        Emitter(n, ev, out).word(n.axiom(), n.depth());
        return out;
    });
}

NUSystem from_macro_system(const MacroSystem& m) {
    SymbolTable vars;
    std::vector<NuWord> rules;
    std::vector<SymbolId> term(256, 0);
    for (char c : m.terminals()) {
        const auto id = vars.intern(std::string(1, c));
        term[static_cast<unsigned char>(c)] = id;
        rules.push_back({NuVariable{id}});
    }
    std::vector<SymbolId> var(m.rules().size());
    for (SymbolId v = 0; v < m.rules().size(); ++v) {
        const auto& name = m.variables().name(v);
        if (vars.find(name))
            throw ValidityError("variable '" + name + "' has the same name as a terminal");
        var[v] = vars.intern(name);
    }
    const std::uint64_t d = m.rules().size();
    for (SymbolId v = 0; v < m.rules().size(); ++v) {
        NuWord w;
        for (const auto& sym : m.rule(v)) {
            if (const auto* t = std::get_if<MsTerminal>(&sym))
                w.push_back(NuVariable{term[static_cast<unsigned char>(t->symbol)]});
            else if (const auto* x = std::get_if<MsVariable>(&sym))
                w.push_back(NuVariable{var[x->var]});
            else {
                const auto& e = std::get<MsExtraction>(sym);
                w.push_back(NuExtraction{var[e.var], d, e.first, e.last});
            }
        }
        // An empty start rule has no NU counterpart; S -> S with n = 0 stands in.
        if (w.empty())
            w.push_back(NuVariable{var[v]});
        rules.push_back(std::move(w));
    }
    const bool empty = m.rule(m.start()).empty();
    return NUSystem(std::move(vars), std::move(rules), {NuVariable{var[m.start()]}}, {}, d,
                    empty ? std::optional<Length>(0) : std::nullopt);
}

NUSystem from_lsystem(const LSystem& l) {
    auto lift = [](const Word& w) {
        NuWord out;
        out.reserve(w.size());
        for (SymbolId a : w)
            out.push_back(NuVariable{a});
        return out;
    };
    std::vector<NuWord> rules;
    rules.reserve(l.rules().size());
    for (const auto& r : l.rules())
        rules.push_back(lift(r));
    return NUSystem(l.variables(), std::move(rules), lift(l.axiom()), l.coding(), l.depth(), l.length());
}

namespace {

// Symbols, rules and coding under construction for concat/compose.
struct Assembly {
    SymbolTable vars;
    std::vector<NuWord> rules;
    std::vector<SymbolId> coding;

    SymbolId add(const std::string& name) {
        const auto id = vars.intern(name);
        if (id == rules.size()) {
            rules.emplace_back();
            coding.push_back(id);
        }
        return id;
    }

    SymbolId add_fresh(const std::string& base) { return add(vars.fresh_name(base)); }

    // Identity rules for every variable of n under its own name.
    void add_originals(const NUSystem& n) {
        for (const auto& name : n.variables().names()) {
            const auto id = add(name);
            rules[id] = {NuVariable{id}};
        }
    }

    // A renamed copy of n's variables; returns the id map.
    std::vector<SymbolId> add_copy(const NUSystem& n, const std::string& suffix) {
        std::vector<SymbolId> map;
        for (const auto& name : n.variables().names())
            map.push_back(add_fresh(name + suffix));
        for (SymbolId a = 0; a < map.size(); ++a)
            rules[map[a]] = remap(n.rules()[a], map);
        return map;
    }

    static NuWord remap(const NuWord& w, const std::vector<SymbolId>& map) {
        NuWord out;
        out.reserve(w.size());
        for (const auto& c : w) {
            if (const auto* v = std::get_if<NuVariable>(&c))
                out.push_back(NuVariable{map[v->var]});
            else if (const auto* e = std::get_if<NuExtraction>(&c))
                out.push_back(NuExtraction{map[e->var], e->level, e->first, e->last});
            else {
                const auto& lv = std::get<NuLevel>(c);
                out.push_back(NuLevel{map[lv.var], lv.level});
            }
        }
        return out;
    }
};

}  // namespace

NUSystem concat(const NUSystem& a, const NUSystem& b) {
    Assembly s;
    s.add_originals(a);
    s.add_originals(b);
    const auto copy_a = s.add_copy(a, ".1");
    const auto copy_b = s.add_copy(b, ".2");
    for (SymbolId x = 0; x < copy_a.size(); ++x)
        s.coding[copy_a[x]] = s.vars.at(a.variables().name(a.coding()[x]));
    for (SymbolId x = 0; x < copy_b.size(); ++x)
        s.coding[copy_b[x]] = s.vars.at(b.variables().name(b.coding()[x]));
    const auto z1 = s.add_fresh("Z.1");
    s.rules[z1] = Assembly::remap(a.axiom(), copy_a);
    const auto z2 = s.add_fresh("Z.2");
    s.rules[z2] = Assembly::remap(b.axiom(), copy_b);

    // Level d_i + 1 of Z_i is level d_i of the copied system.
    NuWord axiom;
    if (a.length() > 0)
        axiom.push_back(NuExtraction{z1, a.depth() + 1, 1, a.length()});
    if (b.length() > 0)
        axiom.push_back(NuExtraction{z2, b.depth() + 1, 1, b.length()});
    if (axiom.empty())
        return NUSystem(std::move(s.vars), std::move(s.rules), {NuVariable{z1}}, std::move(s.coding), 1, 0);
    const Length n = checked_add(a.length(), b.length(), "concatenated length");
    return NUSystem(std::move(s.vars), std::move(s.rules), std::move(axiom), std::move(s.coding), 1, n);
}

NUSystem compose(const NUSystem& a, const NUSystem& b) {
    for (SymbolId x = 0; x < a.variables().size(); ++x) {
        const auto& image = a.variables().name(a.coding()[x]);
        if (!b.variables().find(image))
            throw ValidityError("alphabet mismatch: the coding of the first system maps '" + a.variables().name(x) +
                                "' to '" + image + "', which is not a variable of the second system");
    }
    if (a.length() == 0)
        throw ValidityError("cannot compose with an empty first system");
    Assembly s;
    s.add_originals(a);
    s.add_originals(b);
    const auto copy_a = s.add_copy(a, ".1");
    const auto copy_b = s.add_copy(b, ".2");
    for (SymbolId x = 0; x < copy_a.size(); ++x)
        s.coding[copy_a[x]] = copy_b[b.variables().at(a.variables().name(a.coding()[x]))];
    for (SymbolId x = 0; x < copy_b.size(); ++x)
        s.coding[copy_b[x]] = s.vars.at(b.variables().name(b.coding()[x]));
    const auto z1 = s.add_fresh("Z.1");
    s.rules[z1] = Assembly::remap(a.axiom(), copy_a);

    NuWord axiom{NuExtraction{z1, a.depth() + 1, 1, a.length()}};
    return NUSystem(std::move(s.vars), std::move(s.rules), std::move(axiom), std::move(s.coding), b.depth());
}

namespace {

NuWord parse_nu_word(const std::vector<detail::Token>& toks, std::size_t line, const SymbolTable& vars) {
    NuWord w;
    for (const auto& tok : toks) {
        const bool plain = tok.text.size() == 1 || tok.text.starts_with('\\');
        const auto ref = plain ? detail::ReferenceToken{tok.text, {}, {}, {}} : detail::split_reference(tok, line);
        const auto name = detail::symbol_name(detail::Token{ref.name, tok.column}, line);
        const auto id = vars.find(name);
        if (!id)
            throw ParseError(line, tok.column, "symbol '" + name + "' has no rule");
        if (!ref.level) {
            if (ref.first)
                throw ParseError(line, tok.column, "extraction '" + std::string(tok.text) + "' needs a level");
            w.push_back(NuVariable{*id});
        } else if (!ref.first) {
            w.push_back(NuLevel{*id, *ref.level});
        } else {
            if (*ref.first == 0 || *ref.first > *ref.last)
                throw ParseError(line, tok.column, "extraction range must satisfy 1 <= i <= j");
            w.push_back(NuExtraction{*id, *ref.level, *ref.first, *ref.last});
        }
    }
    return w;
}

}  // namespace

NUSystem parse_nusystem(std::string_view text) {
    const auto st = detail::parse_system_text(text, "nusystem");
    SymbolTable vars;
    for (const auto& r : st.rules) {
        const auto name = detail::symbol_name(r.lhs, r.line);
        if (vars.find(name))
            throw ParseError(r.line, r.lhs.column, "variable '" + name + "' has two rules");
        vars.intern(name);
    }
    std::vector<NuWord> rules;
    for (const auto& r : st.rules)
        rules.push_back(parse_nu_word(r.rhs, r.line, vars));
    NuWord axiom = parse_nu_word(st.axiom, st.axiom_line, vars);

    std::vector<SymbolId> coding(vars.size());
    std::vector<bool> coded(vars.size(), false);
    for (SymbolId a = 0; a < vars.size(); ++a)
        coding[a] = a;
    auto lookup = [&](const detail::Token& tok, std::size_t line) {
        const auto id = vars.find(detail::symbol_name(tok, line));
        if (!id)
            throw ParseError(line, tok.column, "symbol '" + std::string(tok.text) + "' has no rule");
        return *id;
    };
    for (const auto& c : st.coding) {
        const auto from = lookup(c.from, c.line);
        if (coded[from])
            throw ParseError(c.line, c.from.column, "coding maps '" + std::string(c.from.text) + "' twice");
        coded[from] = true;
        coding[from] = lookup(c.to, c.line);
    }
    return NUSystem(std::move(vars), std::move(rules), std::move(axiom), std::move(coding), *st.depth, st.length);
}

std::string to_text(const NUSystem& n) {
    const auto& vars = n.variables();
    auto name = [&](SymbolId a) { return detail::format_symbol_name(vars.name(a)); };
    auto word = [&](const NuWord& w) {
        std::string out;
        for (const auto& c : w) {
            out += " ";
            if (const auto* v = std::get_if<NuVariable>(&c))
                out += name(v->var);
            else if (const auto* e = std::get_if<NuExtraction>(&c))
                out += name(e->var) + "(" + std::to_string(e->level) + ")[" + std::to_string(e->first) + "," +
                       std::to_string(e->last) + "]";
            else {
                const auto& lv = std::get<NuLevel>(c);
                out += name(lv.var) + "(" + std::to_string(lv.level) + ")";
            }
        }
        return out;
    };
    std::string out = "nusystem\naxiom:" + word(n.axiom()) + "\ndepth: " + std::to_string(n.depth()) +
                      "\nlength: " + std::to_string(n.length()) + "\n";
    std::string coding;
    for (SymbolId a = 0; a < vars.size(); ++a)
        if (n.coding()[a] != a)
            coding += " " + name(a) + "->" + name(n.coding()[a]);
    if (!coding.empty())
        out += "coding:" + coding + "\n";
    for (SymbolId a = 0; a < vars.size(); ++a)
        out += "rule: " + name(a) + " ->" + word(n.rules()[a]) + "\n";
    return out;
}

}  // namespace nusys
