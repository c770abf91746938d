#include <doctest.h>

#include "nusys/error.hpp"
#include "nusys/grammar.hpp"
#include "oracles.hpp"

using nusys::GrammarSymbol;

namespace {

nusys::Grammar ababab() {
    return nusys::Grammar("ab", {{"X1", {GrammarSymbol::term('a'), GrammarSymbol::term('b')}},
                                 {"X2", {GrammarSymbol::rule(0), GrammarSymbol::rule(0), GrammarSymbol::rule(0)}}});
}

}  // namespace

TEST_CASE("expand, size, height") {
    const auto g = ababab();
    CHECK(nusys::expand(g) == "ababab");
    CHECK(nusys::size(g) == 5);
    CHECK(nusys::height(g) == 2);
    CHECK(g.expansion_length() == 6);

    const nusys::Grammar one("a", {{"X1", {GrammarSymbol::term('a')}}});
    CHECK(nusys::expand(one) == "a");
    CHECK(nusys::height(one) == 1);
}

TEST_CASE("construction rejects bad references") {
    CHECK_THROWS_AS(nusys::Grammar("a", {{"X1", {GrammarSymbol::rule(0)}}}), nusys::ValidityError);
    CHECK_THROWS_AS(nusys::Grammar("a", {{"X1", {GrammarSymbol::term('b')}}}), nusys::ValidityError);
    CHECK_THROWS_AS(nusys::Grammar("a", {{"X1", {}}}), nusys::ValidityError);
    CHECK_THROWS_AS(nusys::Grammar("a", {}), nusys::ValidityError);
}

TEST_CASE("text format") {
    const auto g = ababab();
    const auto text = nusys::to_text(g);
    CHECK(text == "grammar\nterminals: a b\nX1 -> a b\nX2 -> X1 X1 X1\n");
    CHECK(nusys::parse_grammar(text) == g);
    // Forward references are rejected at parse time.
    CHECK_THROWS_AS(nusys::parse_grammar("grammar\nterminals: a\nX1 -> X2\nX2 -> a\n"), nusys::ParseError);
    CHECK_THROWS_AS(nusys::parse_grammar("grammar\nterminals: a\nX1 -> b\n"), nusys::ParseError);
}

TEST_CASE("random grammars expand like the recursive oracle") {
    oracle::Gen gen(31);
    for (int rep = 0; rep < 300; ++rep) {
        const auto g = gen.grammar(gen.between(1, 8));
        CHECK(nusys::expand(g) == oracle::grammar_by_recursion(g));
        CHECK(nusys::parse_grammar(nusys::to_text(g)) == g);
    }
}
