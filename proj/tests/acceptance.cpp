// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "nusys/convert.hpp"
#include "nusys/error.hpp"
#include "nusys/experiments.hpp"
#include "nusys/grammar.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/macro_scheme.hpp"
#include "nusys/macro_system.hpp"
#include "nusys/measures.hpp"
#include "nusys/nusystem.hpp"
#include "oracles.hpp"

using nusys::Rational;

namespace {

// Wall-clock budgets per criterion, in seconds.
constexpr double kBudgetExamples = 1.0;
constexpr double kBudgetDeltaSep = 60.0;
constexpr double kBudgetHierarchy = 600.0;
constexpr double kBudgetConversions = 30.0;
constexpr double kBudgetOracles = 60.0;
constexpr double kBudgetCycles = 60.0;
constexpr double kBudgetPerMeasure = 10.0;

constexpr std::uint64_t kDeltaSepMaxDepth = 14;
constexpr std::size_t kHierarchyMaxLength = 10;
constexpr int kRandomCorpus = 60;
constexpr nusys::Length kMaterializeLimit = 100'000;
constexpr int kThueMorseOrder = 17;

struct Check {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note << "failed: " << what << "; ";
        }
    }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.note << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget) {
        c.ok = false;
        c.note << "took " << secs << " s, budget " << budget << " s; ";
    }
    if (!c.ok)
        ++failures;
    std::printf("%s %s: %s (%.3f s) %s\n", c.ok ? "PASS" : "FAIL", id, title, secs, c.note.str().c_str());
    std::fflush(stdout);
}

std::string binary(std::uint32_t bits, std::size_t n) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(bits >> i & 1 ? '1' : '0');
    return w;
}

template <class F>
bool rejects_with_cycle(F&& f) {
    try {
        f();
    } catch (const nusys::CycleError& e) {
        return std::string(e.what()).find("cycle") != std::string::npos ||
               std::string(e.what()).find("depends on itself") != std::string::npos;
    }
    return false;
}

}  // namespace

int main() {
    using nusys::MsExtraction;
    using nusys::MsTerminal;
    using nusys::MsVariable;
    using nusys::NuExtraction;
    using nusys::NuVariable;
    using nusys::SymbolTable;

    const nusys::MacroSystem macro_ababab("ab", SymbolTable({"A", "S"}),
                                          {{MsTerminal{'a'}, MsTerminal{'b'}}, {MsVariable{0}, MsExtraction{1, 1, 4}}},
                                          1);
    const nusys::NUSystem nu_ababab(SymbolTable({"a", "b", "A", "S"}),
                                    {{NuVariable{0}}, {NuVariable{1}}, {NuVariable{0}, NuVariable{1}},
                                     {NuVariable{2}, NuExtraction{3, 2, 1, 4}}},
                                    {NuVariable{3}}, {}, 2, 6);
    const nusys::MacroSystem macro_fib(
        "ab", SymbolTable({"S"}),
        {{MsExtraction{0, 6, 11}, MsTerminal{'b'}, MsTerminal{'a'}, MsExtraction{0, 6, 10}}}, 0);

    criterion("AC1", "worked examples decode exactly", kBudgetExamples, [&](Check& c) {
        c.require(nusys::expand(macro_ababab) == "ababab", "macro system A->ab, S->A S[1,4]");
        c.require(nusys::expand(nu_ababab) == "ababab", "NU-system S->A S(2)[1,4], d=2, n=6");
        const auto f7 = oracle::fibonacci(7);
        c.require(f7 == "abaababaabaab", "Fibonacci recurrence oracle");
        c.require(nusys::expand(macro_fib) == f7, "macro system S->S[6,11] b a S[6,10]");
        c.note << "F_7=" << f7 << "; ";
    });

    criterion("AC2", "delta-sep family, d = 1..14", kBudgetDeltaSep, [&](Check& c) {
        for (std::uint64_t d = 1; d <= kDeltaSepMaxDepth; ++d) {
            const auto l = nusys::delta_sep_system(d);
            const std::string ds = "d=" + std::to_string(d);
            c.require(nusys::size(l) == 5, ds + " size 5");
            const auto w = nusys::generate(l);
            c.require(w.size() == (std::size_t{1} << (d + 1)) - 1, ds + " |L_d|");
            const auto by_levels = oracle::lsystem_by_levels(l);
            c.require(by_levels && *by_levels == w, ds + " level materialization");
            for (std::uint64_t j = 1; d >= 2 && j < d; ++j)
                c.require(w.find("0" + std::string(j, '1') + "0") != std::string::npos, ds + " contains 01^j0");
            const Rational delta = nusys::delta(w);
            const Rational want = d <= 8 ? oracle::naive_delta(w) : oracle::automaton_delta(w);
            c.require(delta == want, ds + " delta equals enumeration oracle");
            if (d >= 4)
                c.require(delta >= Rational(d, 8) + Rational(1, 4), ds + " delta >= d/8 + 1/4");
            if (d == kDeltaSepMaxDepth)
                c.note << "delta(L_14)=" << delta << "; ";
        }
    });

    criterion("AC3", "delta <= gamma <= b <= z on all binary strings up to length 10", kBudgetHierarchy,
              [&](Check& c) {
                  std::size_t count = 0;
                  for (std::size_t n = 1; n <= kHierarchyMaxLength; ++n)
                      for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
                          const auto w = binary(bits, n);
                          const Rational d = nusys::delta(w);
                          const auto g = nusys::gamma_bruteforce(w);
                          const auto b = nusys::b_bruteforce(w);
                          const auto z = nusys::lz76_size(w);
                          c.require(d <= Rational(g) && g <= b && b <= z, "hierarchy on " + w);
                          ++count;
                      }
                  c.note << count << " strings; ";
              });

    criterion("AC4", "conversion size bounds and byte-equal checks", kBudgetConversions, [&](Check& c) {
        oracle::Gen gen(4004);
        int bms = 0, macro = 0, lsys = 0, gram = 0;
        auto check = [&](const nusys::AnySystem& src, const nusys::AnySystem& dst, const std::string& what) {
            bool ok = true;
            try {
                nusys::check_conversion(src, dst);
            } catch (const nusys::ValidityError&) {
                ok = false;
            }
            c.require(ok, what + " --check");
        };

        std::vector<nusys::Bms> schemes{nusys::parse_bms("bms n=13\ncopy s=6 len=6\nlit b\nlit a\ncopy s=6 len=5\n"),
                                        nusys::Bms({nusys::Literal{'a'}, nusys::Copy{1, 3}}, 4)};
        while (schemes.size() < kRandomCorpus + 2u) {
            auto b = gen.bms(gen.between(1, 14), true);
            if (nusys::validate(b))
                schemes.push_back(b);
        }
        for (const auto& b : schemes) {
            const auto m = nusys::from_bms(b);
            c.require(nusys::size(m) == b.size(), "size(from_bms(B)) = |B|");
            check(b, m, "bms->macrosystem");
            ++bms;
        }

        std::vector<nusys::MacroSystem> macros{macro_ababab, macro_fib};
        while (macros.size() < kRandomCorpus + 2u) {
            auto m = gen.layered_macro_system(gen.between(1, 5));
            if (nusys::is_internal(m))
                macros.push_back(m);
        }
        for (const auto& m : macros) {
            const auto b = nusys::to_bms(m);
            c.require(b.size() <= nusys::size(m), "|to_bms(M)| <= size(M)");
            check(m, b, "macrosystem->bms");
            check(m, nusys::from_macro_system(m), "macrosystem->nusystem");
            ++macro;
        }

        std::vector<nusys::LSystem> ls{nusys::delta_sep_system(3), nusys::thue_morse_system(10)};
        while (ls.size() < kRandomCorpus + 2u)
            ls.push_back(gen.lsystem(gen.between(1, 4), 8));
        for (const auto& l : ls) {
            const auto g = nusys::to_grammar(l);
            c.require(nusys::size(g) <= (l.depth() + 1) * nusys::size(l) + l.depth(),
                      "size(to_grammar(L)) <= (d+1) size(L) + d");
            check(l, g, "lsystem->grammar");
            check(l, nusys::from_lsystem(l), "lsystem->nusystem");
            ++lsys;
        }
        c.require(nusys::size(nusys::to_grammar(nusys::delta_sep_system(3))) <= 4 * 5, "delta-sep d=3 within 4*5");

        std::vector<nusys::Grammar> gs{nusys::parse_grammar("grammar\nterminals: a b\nX1 -> a b\nX2 -> X1 X1 X1\n")};
        while (gs.size() < kRandomCorpus + 1u)
            gs.push_back(gen.grammar(gen.between(1, 8)));
        for (const auto& g : gs) {
            const auto l = nusys::from_grammar(g);
            c.require(nusys::size(l) <= nusys::size(g) + g.terminals().size(), "size(from_grammar(G)) <= size(G)+|S|");
            check(g, l, "grammar->lsystem");
            ++gram;
        }
        c.note << bms << " schemes, " << macro << " macro systems, " << lsys << " L-systems, " << gram
               << " grammars; ";
    });

    criterion("AC5", "lazy evaluation matches materializing oracles", kBudgetOracles, [&](Check& c) {
        oracle::Gen gen(5005);
        int lsys = 0;
        for (int rep = 0; rep < 400; ++rep) {
            const auto l = gen.lsystem(gen.between(1, 5), 14);
            const auto want = oracle::lsystem_by_levels(l, kMaterializeLimit);
            if (!want)
                continue;
            c.require(nusys::generate(l) == *want, "generate(L) equals level materialization");
            c.require(nusys::expand(nusys::from_lsystem(l)) == *want, "NU embedding of L");
            ++lsys;
        }
        for (std::uint64_t d = 0; d <= 15; ++d) {
            const auto tm = nusys::thue_morse_system(d);
            c.require(nusys::generate(tm) == oracle::thue_morse(static_cast<int>(d)), "Thue-Morse doubling oracle");
        }
        int macro = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const auto m = gen.layered_macro_system(gen.between(1, 6));
            const auto want = oracle::macro_by_iteration(m);
            c.require(want && nusys::expand(m) == *want, "macro expansion equals chaotic iteration");
            c.require(nusys::expand(nusys::from_macro_system(m)) == nusys::expand(m), "NU embedding of M");
            ++macro;
        }
        int pairs = 0;
        for (int rep = 0; rep < 150; ++rep) {
            const auto a = nusys::from_lsystem(gen.lsystem(gen.between(1, 3), 4));
            const auto b = nusys::from_lsystem(gen.lsystem(gen.between(1, 3), 4));
            c.require(nusys::expand(nusys::concat(a, b)) == nusys::expand(a) + nusys::expand(b), "concat");
            try {
                const auto k = nusys::compose(a, b);
                oracle::NuSpec spec{b.variables().names(), b.rules(), {}, b.coding(), b.depth(), std::nullopt};
                for (char ch : nusys::expand(a))
                    spec.axiom.push_back(NuVariable{b.variables().at(std::string(1, ch))});
                const auto want = oracle::nu_by_iteration(spec);
                c.require(want.verdict == oracle::NuVerdict::Ok && nusys::expand(k) == want.text, "compose");
                ++pairs;
            } catch (const nusys::ValidityError&) {
            }
        }
        c.note << lsys << " L-systems, " << macro << " macro systems, " << pairs << " compositions; ";
    });

    criterion("AC6", "cycle detection and deterministic acceptance", kBudgetCycles, [&](Check& c) {
        c.require(rejects_with_cycle([] { nusys::decode(nusys::Bms({nusys::Copy{1, 2}}, 2)); }), "self-copy BMS");
        c.require(rejects_with_cycle([] {
                      nusys::expand(nusys::MacroSystem("a", SymbolTable({"S"}),
                                                       {{MsExtraction{0, 2, 2}, MsExtraction{0, 1, 1}}}, 0));
                  }),
                  "S -> S[2,2] S[1,1]");
        c.require(rejects_with_cycle([] {
                      nusys::expand(nusys::NUSystem(SymbolTable({"S"}), {{NuExtraction{0, 1, 1, 1}}},
                                                    {NuVariable{0}}, {}, 1));
                  }),
                  "S -> S(1)[1,1]");

        oracle::Gen gen(6006);
        int accepted = 0, rejected = 0;
        auto twice = [&](auto&& run, auto&& want) {
            std::optional<std::string> first, second;
            try {
                first = run();
                second = run();
            } catch (const nusys::ValidityError&) {
            }
            c.require(first == second, "two expansions agree");
            c.require(first == want, "acceptance agrees with the iteration oracle");
            (first ? accepted : rejected)++;
        };
        for (int rep = 0; rep < 2000; ++rep) {
            const auto b = gen.bms(gen.between(1, 10), false);
            twice([&] { return nusys::decode(b); }, oracle::bms_decode_by_iteration(b));
        }
        for (int rep = 0; rep < 2000; ++rep) {
            const auto m = gen.macro_system(gen.between(1, 4));
            twice([&] { return nusys::expand(m); }, oracle::macro_by_iteration(m));
        }
        for (int rep = 0; rep < 4000; ++rep) {
            const auto spec = gen.nu_spec(gen.between(1, 4), 4, 3);
            const auto want = oracle::nu_by_iteration(spec);
            if (want.verdict == oracle::NuVerdict::TooLarge)
                continue;
            twice([&] { return nusys::expand(spec.build()); },
                  want.verdict == oracle::NuVerdict::Ok ? std::optional<std::string>(want.text) : std::nullopt);
        }
        c.note << accepted << " accepted, " << rejected << " rejected; ";
    });

    criterion("AC7", "delta and z on the 2^17-symbol Thue-Morse prefix", 2 * kBudgetPerMeasure + 30, [&](Check& c) {
        const auto t = oracle::thue_morse(kThueMorseOrder);
        auto timed = [](auto&& f) {
            const auto start = std::chrono::steady_clock::now();
            f();
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        Rational delta;
        std::uint64_t z = 0;
        const double td = timed([&] { delta = nusys::delta(t); });
        const double tz = timed([&] { z = nusys::lz76_size(t); });
        c.require(td < kBudgetPerMeasure, "delta under 10 s");
        c.require(tz < kBudgetPerMeasure, "z under 10 s");
        for (int k = 1; k <= kThueMorseOrder; ++k) {
            const auto tk = oracle::thue_morse(k);
            const auto want = oracle::greedy_lz_by_search(tk);
            c.require(nusys::lz76_size(tk) == want, "z(t_k) equals greedy oracle, k=" + std::to_string(k));
            c.require(want <= 4u * static_cast<std::uint64_t>(k), "z(t_k) <= 4k, k=" + std::to_string(k));
        }
        c.note << "delta=" << delta << " in " << td << " s, z=" << z << " in " << tz << " s; ";
    });

    return failures;
}
