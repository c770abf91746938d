#include <doctest.h>

#include "nusys/error.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/macro_system.hpp"
#include "nusys/nusystem.hpp"
#include "oracles.hpp"

using nusys::NuExtraction;
using nusys::NuLevel;
using nusys::NuVariable;
using nusys::NUSystem;
using nusys::SymbolTable;

namespace {

NUSystem ababab() {
    return NUSystem(SymbolTable({"a", "b", "A", "S"}),
                    {{NuVariable{0}}, {NuVariable{1}}, {NuVariable{0}, NuVariable{1}},
                     {NuVariable{2}, NuExtraction{3, 2, 1, 4}}},
                    {NuVariable{3}}, {}, 2, 6);
}

oracle::NuSpec spec_of(const NUSystem& n) {
    return {n.variables().names(), n.rules(), n.axiom(), n.coding(), n.depth(), n.length()};
}

// N2's rules for d2 levels from the symbols of w, matched by name.
std::string run_from(const NUSystem& n2, const std::string& w) {
    auto spec = spec_of(n2);
    spec.axiom.clear();
    for (char c : w)
        spec.axiom.push_back(NuVariable{n2.variables().at(std::string(1, c))});
    spec.length.reset();
    const auto out = oracle::nu_by_iteration(spec);
    REQUIRE(out.verdict == oracle::NuVerdict::Ok);
    return out.text;
}

}  // namespace

TEST_CASE("worked example") {
    const auto n = ababab();
    CHECK(nusys::expand(n) == "ababab");
    CHECK(nusys::size(n) == 1 + 1 + 1 + 2 + 2);
    CHECK(n.max_level() == 2);
    const auto rows = nusys::level_lengths(n);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][3] == 5);
    CHECK(rows[2][3] == 6);
    CHECK(rows[0] == std::vector<nusys::Length>{1, 1, 1, 1});
    CHECK(oracle::nu_by_iteration(spec_of(n)).text == "ababab");
}

TEST_CASE("cycles and range errors") {
    const NUSystem loop(SymbolTable({"S"}), {{NuExtraction{0, 1, 1, 1}}}, {NuVariable{0}}, {}, 1);
    try {
        nusys::expand(loop);
        FAIL("expected a cycle");
    } catch (const nusys::CycleError& e) {
        CHECK(std::string(e.what()).find("S(1)[1]") != std::string::npos);
    }
    CHECK_THROWS_AS(NUSystem(SymbolTable({"a", "S"}), {{NuVariable{0}}, {NuExtraction{0, 1, 1, 2}}}, {NuVariable{1}},
                             {}, 1),
                    nusys::ValidityError);
    CHECK_THROWS_AS(NUSystem(SymbolTable({"a"}), {{}}, {NuVariable{0}}, {}, 1), nusys::ValidityError);
    CHECK_THROWS_AS(NUSystem(SymbolTable({"a"}), {{NuVariable{0}}}, {NuVariable{0}}, {}, 1, 2), nusys::ValidityError);
    CHECK_THROWS_AS(NUSystem(SymbolTable({"a"}), {{NuVariable{0}, NuVariable{0}}}, {NuVariable{0}}, {}, 80),
                    nusys::OverflowError);
}

TEST_CASE("whole-level shorthand") {
    // A -> a b, S -> A(1) A(1): A(1) is A(1)[1,2].
    const NUSystem n(SymbolTable({"a", "b", "A", "S"}),
                     {{NuVariable{0}}, {NuVariable{1}}, {NuVariable{0}, NuVariable{1}}, {NuLevel{2, 1}, NuLevel{2, 1}}},
                     {NuVariable{3}}, {}, 1);
    CHECK(std::holds_alternative<NuExtraction>(n.rules()[3][0]));
    CHECK(std::get<NuExtraction>(n.rules()[3][0]) == NuExtraction{2, 1, 1, 2});
    CHECK(nusys::expand(n) == "abab");
}

TEST_CASE("from macro system") {
    const nusys::MacroSystem m("ab", SymbolTable({"A", "S"}),
                               {{nusys::MsTerminal{'a'}, nusys::MsTerminal{'b'}},
                                {nusys::MsVariable{0}, nusys::MsExtraction{1, 1, 4}}},
                               1);
    const auto n = nusys::from_macro_system(m);
    CHECK(nusys::to_text(n) ==
          "nusystem\naxiom: S\ndepth: 2\nlength: 6\nrule: a -> a\nrule: b -> b\nrule: A -> a b\n"
          "rule: S -> A S(2)[1,4]\n");
    CHECK(nusys::expand(n) == "ababab");
    CHECK(nusys::size(n) <= nusys::size(m) + 2 + 1);

    const nusys::MacroSystem single("a", SymbolTable({"S"}), {{nusys::MsTerminal{'a'}}}, 0);
    const auto ns = nusys::from_macro_system(single);
    CHECK(nusys::to_text(ns) == "nusystem\naxiom: S\ndepth: 1\nlength: 1\nrule: a -> a\nrule: S -> a\n");

    const nusys::MacroSystem fib("ab", SymbolTable({"S"}),
                                 {{nusys::MsExtraction{0, 6, 11}, nusys::MsTerminal{'b'}, nusys::MsTerminal{'a'},
                                   nusys::MsExtraction{0, 6, 10}}},
                                 0);
    CHECK(nusys::expand(nusys::from_macro_system(fib)) == oracle::fibonacci(7));
}

TEST_CASE("from lsystem") {
    CHECK(nusys::expand(nusys::from_lsystem(nusys::delta_sep_system(3))) == "001001100100111");
    CHECK(nusys::expand(nusys::from_lsystem(nusys::thue_morse_system(2))) == "0110");
    const auto big = nusys::from_lsystem(nusys::thue_morse_system(16));
    CHECK(nusys::expand(big) == oracle::thue_morse(16));
}

TEST_CASE("concat and compose") {
    const auto ds1 = nusys::from_lsystem(nusys::delta_sep_system(1));
    const auto tm1 = nusys::from_lsystem(nusys::thue_morse_system(1));
    const auto c = nusys::concat(ds1, tm1);
    CHECK(nusys::expand(c) == "00101");
    CHECK(nusys::size(c) <= 2 * (nusys::size(ds1) + nusys::size(tm1)) + 4);

    const NUSystem just_a(SymbolTable({"a"}), {{NuVariable{0}}}, {NuVariable{0}}, {}, 0);
    CHECK(nusys::expand(nusys::concat(ababab(), just_a)) == "abababa");

    const auto tm_rules = nusys::from_lsystem(nusys::thue_morse_system(1));
    const auto k = nusys::compose(tm1, tm_rules);
    CHECK(nusys::expand(k) == "0110");
    CHECK(run_from(tm_rules, "01") == "0110");

    // tau_1 image outside V_2.
    CHECK_THROWS_AS(nusys::compose(ababab(), tm1), nusys::ValidityError);
}

TEST_CASE("text format") {
    const auto text = nusys::to_text(ababab());
    CHECK(nusys::parse_nusystem(text) == ababab());
    const auto parsed = nusys::parse_nusystem(
        "nusystem\naxiom: S\ndepth: 1\nrule: a -> a\nrule: b -> b\nrule: A -> a b\nrule: S -> A(1) A(1)\n");
    CHECK(nusys::expand(parsed) == "abab");
    CHECK_THROWS_AS(nusys::parse_nusystem("nusystem\naxiom: S\ndepth: 1\nrule: S -> S(1)[1\n"), nusys::ParseError);
    CHECK_THROWS_AS(nusys::parse_nusystem("nusystem\naxiom: S\ndepth: 1\nrule: S -> T\n"), nusys::ParseError);
}

TEST_CASE("random NU-systems agree with chaotic iteration") {
    oracle::Gen gen(61);
    int ok = 0, invalid = 0, skipped = 0;
    for (int rep = 0; rep < 4000; ++rep) {
        auto spec = gen.nu_spec(gen.between(1, 4), 4, 3);
        const auto want = oracle::nu_by_iteration(spec);
        if (want.verdict == oracle::NuVerdict::TooLarge) {
            ++skipped;
            continue;
        }
        std::optional<std::string> got;
        try {
            got = nusys::expand(spec.build());
        } catch (const nusys::ValidityError&) {
        }
        INFO("rep " << rep);
        CHECK(got.has_value() == (want.verdict == oracle::NuVerdict::Ok));
        if (got && want.verdict == oracle::NuVerdict::Ok) {
            CHECK(*got == want.text);
            CHECK(nusys::expand(spec.build()) == *got);
            ++ok;
            // Prefix consistency.
            if (got->size() > 1) {
                spec.length = got->size() / 2;
                CHECK(nusys::expand(spec.build()) == got->substr(0, got->size() / 2));
            }
        } else {
            ++invalid;
        }
    }
    CHECK(ok > 300);
    CHECK(invalid > 300);
    CHECK(skipped < 400);
}

TEST_CASE("random embeddings") {
    oracle::Gen gen(62);
    for (int rep = 0; rep < 300; ++rep) {
        const auto l = gen.lsystem(gen.between(1, 4), 6);
        CHECK(nusys::expand(nusys::from_lsystem(l)) == nusys::generate(l));
    }
    for (int rep = 0; rep < 300; ++rep) {
        const auto m = gen.layered_macro_system(gen.between(1, 5));
        const auto n = nusys::from_macro_system(m);
        CHECK(nusys::expand(n) == nusys::expand(m));
        CHECK(nusys::size(n) <= nusys::size(m) + m.terminals().size() + 1);
    }
}

TEST_CASE("random concat and compose") {
    oracle::Gen gen(63);
    int composed = 0;
    for (int rep = 0; rep < 300; ++rep) {
        const auto a = nusys::from_lsystem(gen.lsystem(gen.between(1, 3), 4));
        const auto b = nusys::from_lsystem(gen.lsystem(gen.between(1, 3), 4));
        CHECK(nusys::expand(nusys::concat(a, b)) == nusys::expand(a) + nusys::expand(b));
        try {
            const auto k = nusys::compose(a, b);
            CHECK(nusys::expand(k) == run_from(b, nusys::expand(a)));
            ++composed;
        } catch (const nusys::ValidityError& e) {
            CHECK(std::string(e.what()).find("alphabet mismatch") != std::string::npos);
        }
    }
    CHECK(composed > 100);
    // Systems with extractions.
    const auto m = nusys::from_macro_system(nusys::MacroSystem(
        "ab", SymbolTable({"S"}),
        {{nusys::MsExtraction{0, 6, 11}, nusys::MsTerminal{'b'}, nusys::MsTerminal{'a'},
          nusys::MsExtraction{0, 6, 10}}},
        0));
    CHECK(nusys::expand(nusys::concat(m, ababab())) == oracle::fibonacci(7) + "ababab");
    CHECK(nusys::expand(nusys::concat(ababab(), m)) == "ababab" + oracle::fibonacci(7));
    const auto coded = NUSystem(ababab().variables(), ababab().rules(), ababab().axiom(), {0, 1, 0, 1}, 2, 6);
    CHECK(nusys::expand(nusys::compose(coded, m)) == run_from(m, "ababab"));
}
