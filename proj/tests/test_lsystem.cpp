#include <doctest.h>

#include <bit>

#include "nusys/error.hpp"
#include "nusys/grammar.hpp"
#include "nusys/lsystem.hpp"
#include "oracles.hpp"

using nusys::LSystem;
using nusys::SymbolTable;

namespace {

LSystem fibonacci_morphism(std::uint64_t d, std::optional<nusys::Length> n = std::nullopt) {
    nusys::MorphismSpec spec;
    spec.rules = {{"a", {"a", "b"}}, {"b", {"a"}}};
    spec.axiom = {"a"};
    spec.depth = d;
    spec.length = n;
    return nusys::custom_morphism_system(spec);
}

std::uint64_t ceil_lg(nusys::Length n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

}  // namespace

TEST_CASE("families") {
    const auto ds = nusys::delta_sep_system(3);
    CHECK(nusys::size(ds) == 5);
    CHECK(ds.length() == 15);
    CHECK(nusys::generate(ds) == "001001100100111");
    CHECK(nusys::generate(nusys::delta_sep_system(2)) == "0010011");
    CHECK(nusys::generate(nusys::thue_morse_system(1)) == "01");
    CHECK(nusys::generate(nusys::thue_morse_system(2)) == "0110");
    CHECK(nusys::generate(fibonacci_morphism(4)) == "abaababa");
    CHECK(nusys::generate(fibonacci_morphism(5, 8)) == "abaababa");
    CHECK(nusys::generate(fibonacci_morphism(5)) == oracle::fibonacci(7));
    CHECK(nusys::generate(nusys::make_family("thue-morse", 4)) == oracle::thue_morse(4));
    CHECK_THROWS_AS(nusys::make_family("nope", 1), std::invalid_argument);
    CHECK_THROWS_AS(nusys::delta_sep_system(62), nusys::OverflowError);
    CHECK(nusys::delta_sep_system(61).length() == (nusys::Length{1} << 62) - 1);
}

TEST_CASE("level lengths") {
    const auto rows = nusys::level_lengths(nusys::delta_sep_system(4));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i][0] == (nusys::Length{1} << (i + 1)) - 1);
        CHECK(rows[i][1] == 1);
    }
    // Saturated at n + 1 for long levels.
    const LSystem tm(SymbolTable({"0", "1"}), {{0, 1}, {1, 0}}, {0}, {}, 50, 10);
    const auto sat = nusys::level_lengths(tm);
    CHECK(sat.back()[0] == 11);
    CHECK(nusys::generate(tm) == oracle::thue_morse(4).substr(0, 10));
}

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(LSystem(SymbolTable({"a"}), {{}}, {0}, {}, 1), nusys::ValidityError);
    CHECK_THROWS_AS(LSystem(SymbolTable({"a"}), {{0}}, {}, {}, 1), nusys::ValidityError);
    CHECK_THROWS_AS(LSystem(SymbolTable({"a"}), {{0}}, {0}, {}, 1, 2), nusys::ValidityError);
    CHECK_THROWS_AS(LSystem(SymbolTable({"a"}), {{1}}, {0}, {}, 1), nusys::ValidityError);
    CHECK_THROWS_AS(LSystem(SymbolTable({"a"}), {{0, 0}}, {0}, {}, 70), nusys::OverflowError);
    CHECK_NOTHROW(LSystem(SymbolTable({"a"}), {{0, 0}}, {0}, {}, 70, 5));
}

TEST_CASE("morphism profile") {
    const auto tm = nusys::profile(nusys::thue_morse_system(3));
    CHECK(tm.depth == 2);
    CHECK(tm.width == 2);
    CHECK(tm.size == 4);
    CHECK(tm.expanding);
    CHECK(tm.non_erasing);
    CHECK(tm.uniform_k == 2u);
    CHECK_FALSE(tm.coding);
    CHECK(tm.prolongable_on == std::vector<nusys::SymbolId>{0, 1});

    const auto ds = nusys::profile(nusys::delta_sep_system(3));
    CHECK_FALSE(ds.expanding);
    CHECK_FALSE(ds.uniform_k.has_value());
    CHECK(ds.prolongable_on == std::vector<nusys::SymbolId>{0});

    const auto swap = nusys::profile(std::vector<nusys::Word>{{1}, {0}});
    CHECK(swap.coding);
    CHECK(swap.uniform_k == 1u);
    CHECK(swap.prolongable_on.empty());
}

TEST_CASE("level grammar") {
    const auto g = nusys::to_grammar(nusys::delta_sep_system(3));
    CHECK(nusys::to_text(g) ==
          "grammar\nterminals: 0 1\n0_2 -> 0 0 1\n1_2 -> 1\n0_1 -> 0_2 0_2 1_2\n1_1 -> 1_2\n0_0 -> 0_1 0_1 1_1\n"
          "S' -> 0_0\n");
    CHECK(nusys::size(g) == 12);
    CHECK(nusys::size(g) <= 4 * 5);

    const auto g0 = nusys::to_grammar(nusys::delta_sep_system(0));
    CHECK(nusys::to_text(g0) == "grammar\nterminals: 0\nS' -> 0\n");

    const auto tm = nusys::to_grammar(nusys::thue_morse_system(10));
    CHECK(nusys::expand(tm) == oracle::thue_morse(10));
    CHECK(nusys::size(tm) <= 11 * 5);

    // Deep expanding system cut to a short prefix: rebased to ceil(lg n) levels.
    const LSystem deep(SymbolTable({"0", "1"}), {{0, 1}, {1, 0}}, {0}, {}, 40, 1000);
    const auto gd = nusys::to_grammar(deep);
    CHECK(nusys::expand(gd) == oracle::thue_morse(10).substr(0, 1000));
    CHECK(nusys::height(gd) <= ceil_lg(1000) + 1);
}

TEST_CASE("grammar to lsystem") {
    using nusys::GrammarSymbol;
    const nusys::Grammar g("ab", {{"X1", {GrammarSymbol::term('a'), GrammarSymbol::term('b')}},
                                  {"X2", {GrammarSymbol::rule(0), GrammarSymbol::rule(0), GrammarSymbol::rule(0)}}});
    const auto l = nusys::from_grammar(g);
    CHECK(nusys::to_text(l) ==
          "lsystem\naxiom: X1 X1 X1\ndepth: 1\nlength: 6\nrule: X1 -> a b\nrule: a -> a\nrule: b -> b\n");
    CHECK(nusys::generate(l) == "ababab");

    const nusys::Grammar one("a", {{"X1", {GrammarSymbol::term('a')}}});
    const auto l1 = nusys::from_grammar(one);
    CHECK(l1.depth() == 0);
    CHECK(nusys::generate(l1) == "a");
}

TEST_CASE("text format") {
    const auto ds = nusys::delta_sep_system(13);
    const auto text = nusys::to_text(ds);
    CHECK(text == "lsystem\naxiom: 0\ndepth: 13\nlength: 16383\nrule: 0 -> 0 0 1\nrule: 1 -> 1\n");
    CHECK(nusys::parse_lsystem(text) == ds);
    const auto coded = nusys::parse_lsystem("lsystem\naxiom: a\ndepth: 2\ncoding: b->a\nrule: a -> a b\nrule: b -> a\n");
    CHECK(nusys::generate(coded) == "aaa");
    CHECK(nusys::parse_lsystem(nusys::to_text(coded)) == coded);
    CHECK_THROWS_AS(nusys::parse_lsystem("lsystem\naxiom: 0\nrule: 0 -> 0\n"), nusys::ParseError);
    CHECK_THROWS_AS(nusys::parse_lsystem("lsystem\naxiom: 0\ndepth: 1\nrule: 0 -> 2\n"), nusys::ParseError);
}

TEST_CASE("delta-sep levels") {
    for (std::uint64_t d = 2; d <= 12; ++d) {
        const auto w = nusys::generate(nusys::delta_sep_system(d));
        CHECK(w.size() == (std::size_t{1} << (d + 1)) - 1);
        CHECK(std::count(w.begin(), w.end(), '0') == (1 << d));
        for (std::uint64_t j = 1; j < d; ++j)
            CHECK(w.find("0" + std::string(j, '1') + "0") != std::string::npos);
    }
}

TEST_CASE("random systems: lazy generation, prefixes, grammars") {
    oracle::Gen gen(51);
    int bound_misses = 0;
    for (int rep = 0; rep < 600; ++rep) {
        const auto l = gen.lsystem(gen.between(1, 4), 7, rep % 3 == 0);
        const auto want = oracle::lsystem_by_levels(l);
        REQUIRE(want.has_value());
        const auto w = nusys::generate(l);
        CHECK(w == *want);

        if (l.length() > 1) {
            const LSystem shorter(l.variables(), l.rules(), l.axiom(), l.coding(), l.depth(), l.length() / 2);
            CHECK(nusys::generate(shorter) == w.substr(0, l.length() / 2));
        }
        const auto g = nusys::to_grammar(l);
        CHECK(nusys::expand(g) == w);
        if (nusys::size(g) > (l.depth() + 1) * nusys::size(l) + l.depth())
            ++bound_misses;
        CHECK(nusys::parse_lsystem(nusys::to_text(l)) == l);
    }
    CHECK(bound_misses == 0);
}

TEST_CASE("random grammars through lsystems") {
    oracle::Gen gen(52);
    for (int rep = 0; rep < 300; ++rep) {
        const auto g = gen.grammar(gen.between(1, 7));
        const auto l = nusys::from_grammar(g);
        CHECK(nusys::generate(l) == nusys::expand(g));
        std::set<char> used;
        for (const auto& r : g.rules())
            for (const auto& s : r.rhs)
                if (s.terminal)
                    used.insert(static_cast<char>(s.id));
        CHECK(nusys::size(l) <= nusys::size(g) + used.size());
    }
}
