#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nusys/convert.hpp"
#include "nusys/error.hpp"
#include "nusys/experiments.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/measures.hpp"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kParse = 1;
constexpr int kInvalid = 2;
constexpr int kLimit = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::optional<nusys::SystemKind> kind_option(const std::string& name) {
    if (name.empty())
        return std::nullopt;
    if (auto k = nusys::kind_from_name(name))
        return k;
    throw std::invalid_argument("unknown kind '" + name + "'");
}

std::vector<std::string> kind_names() {
    return {"bms", "grammar", "macrosystem", "lsystem", "nusystem"};
}

struct DecodeArgs {
    std::string path;
    std::string kind;
};

int cmd_decode(const DecodeArgs& a) {
    const auto sys = nusys::parse_any(read_input(a.path), kind_option(a.kind));
    std::cout << nusys::decode_any(sys);
    std::cout.flush();
    return kOk;
}

int cmd_validate(const DecodeArgs& a) {
    const auto sys = nusys::parse_any(read_input(a.path), kind_option(a.kind));
    const auto w = nusys::decode_any(sys);
    std::cout << "valid " << nusys::kind_name(nusys::kind_of(sys)) << " size=" << nusys::size(sys)
              << " n=" << w.size() << '\n';
    return kOk;
}

struct MeasureArgs {
    std::string path;
    bool delta = false;
    bool z = false;
    bool gamma = false;
    bool b = false;
    std::optional<std::uint64_t> limit;
    bool csv = false;
    bool strip_newline = false;
    std::optional<std::string> alphabet;
};

int cmd_measure(const MeasureArgs& a) {
    std::string w = read_input(a.path);
    if (a.strip_newline && !w.empty() && w.back() == '\n')
        w.pop_back();
    if (a.alphabet) {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (a.alphabet->find(w[i]) == std::string::npos) {
                char hex[8];
                std::snprintf(hex, sizeof hex, "0x%02x", static_cast<unsigned char>(w[i]));
                throw nusys::ValidityError("byte " + std::string(hex) + " at position " + std::to_string(i + 1) +
                                           " is outside the declared alphabet");
            }
    }
    const bool any = a.delta || a.z || a.gamma || a.b;
    const bool want_delta = a.delta || !any;
    const bool want_z = a.z || !any;

    std::vector<std::pair<std::string, std::string>> cols{{"n", std::to_string(w.size())}};
    if (want_delta)
        cols.emplace_back("delta", nusys::delta(w).to_string());
    if (want_z)
        cols.emplace_back("z", std::to_string(nusys::lz76_size(w)));
    if (a.gamma)
        cols.emplace_back("gamma", std::to_string(nusys::gamma_bruteforce(w, a.limit.value_or(nusys::kDefaultGammaLimit))));
    if (a.b)
        cols.emplace_back("b", std::to_string(nusys::b_bruteforce(w, a.limit.value_or(nusys::kDefaultBLimit))));

    if (a.csv) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            std::cout << (i ? "," : "") << cols[i].first;
        std::cout << '\n';
        for (std::size_t i = 0; i < cols.size(); ++i)
            std::cout << (i ? "," : "") << cols[i].second;
        std::cout << '\n';
    } else {
        for (const auto& [k, v] : cols)
            std::cout << k << '=' << v << '\n';
    }
    return kOk;
}

struct ConvertArgs {
    std::string path;
    std::string from;
    std::string to;
    bool check = false;
};

int cmd_convert(const ConvertArgs& a) {
    const auto src = nusys::parse_any(read_input(a.path), kind_option(a.from));
    const auto dst = nusys::convert(src, *kind_option(a.to));
    if (a.check)
        nusys::check_conversion(src, dst);
    std::cout << nusys::to_text(dst);
    if (a.check)
        std::cerr << "check: outputs match (" << nusys::decode_any(dst).size() << " symbols)\n";
    return kOk;
}

struct GenerateArgs {
    std::string family;
    std::uint64_t depth = 0;
    std::optional<nusys::Length> length;
    std::vector<std::string> rules;
    std::string axiom;
    std::vector<std::string> coding;
    bool text = false;
};

// "a->ab": one-byte symbols on both sides.
std::pair<std::string, std::string> split_arrow(const std::string& s) {
    const auto at = s.find("->");
    if (at == std::string::npos || at != 1)
        throw std::invalid_argument("expected X->..., got '" + s + "'");
    return {s.substr(0, 1), s.substr(at + 2)};
}

std::vector<std::string> bytes_of(const std::string& s) {
    std::vector<std::string> out;
    for (char c : s)
        out.emplace_back(1, c);
    return out;
}

int cmd_generate(const GenerateArgs& a) {
    nusys::MorphismSpec spec;
    for (const auto& r : a.rules) {
        auto [lhs, rhs] = split_arrow(r);
        spec.rules[lhs] = bytes_of(rhs);
    }
    for (const auto& c : a.coding) {
        auto [lhs, rhs] = split_arrow(c);
        if (rhs.size() != 1)
            throw std::invalid_argument("coding image must be one symbol: '" + c + "'");
        spec.coding[lhs] = rhs;
    }
    spec.axiom = bytes_of(a.axiom);
    spec.length = a.length;
    if (a.family != "custom-morphism" && (!a.rules.empty() || !a.axiom.empty() || !a.coding.empty()))
        throw std::invalid_argument("--rule, --axiom and --coding only apply to custom-morphism");
    auto sys = nusys::make_family(a.family, a.depth, spec);
    if (a.length && a.family != "custom-morphism")
        sys = nusys::LSystem(sys.variables(), sys.rules(), sys.axiom(), sys.coding(), sys.depth(), a.length);
    if (a.text)
        std::cout << nusys::generate(sys);
    else
        std::cout << nusys::to_text(sys);
    return kOk;
}

struct ExperimentArgs {
    std::string name;
    std::uint64_t d_min = 1;
    std::uint64_t d_max = 10;
    bool csv = false;
    bool timing = false;
};

int cmd_experiment(const ExperimentArgs& a) {
    const auto rows = a.name == "delta-vs-ell" ? nusys::delta_vs_ell(a.d_min, a.d_max, a.timing)
                                               : nusys::thue_morse_z(a.d_min, a.d_max, a.timing);
    if (a.csv) {
        std::cout << nusys::to_csv(rows);
        return kOk;
    }
    std::printf("%4s %10s %6s %14s %8s %12s\n", "d", "n", "size", "delta", "z", "elapsed_ms");
    for (const auto& r : rows)
        std::printf("%4llu %10llu %6llu %14s %8llu %12.3f\n", static_cast<unsigned long long>(r.d),
                    static_cast<unsigned long long>(r.n), static_cast<unsigned long long>(r.size),
                    r.delta.to_string().c_str(), static_cast<unsigned long long>(r.z), r.elapsed_ms);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decode, measure and convert string representations: bidirectional macro schemes, "
                 "grammars, macro systems, L-systems and NU-systems."};
    app.require_subcommand(1);
    const auto kinds = CLI::IsMember(kind_names());

    DecodeArgs dec;
    auto* decode = app.add_subcommand("decode", "Print the string a system represents");
    decode->add_option("path", dec.path, "System file, or - for stdin")->required();
    decode->add_option("--kind", dec.kind, "Force the input kind instead of reading the header")->check(kinds);

    DecodeArgs val;
    auto* validate = app.add_subcommand("validate", "Check a system and report its kind, size and length");
    validate->add_option("path", val.path, "System file, or - for stdin")->required();
    validate->add_option("--kind", val.kind, "Force the input kind")->check(kinds);

    MeasureArgs mea;
    auto* measure = app.add_subcommand("measure", "Measures of a raw string (delta and z by default)");
    measure->add_option("path", mea.path, "Input file, or - for stdin")->required();
    measure->add_flag("--delta", mea.delta, "max_k S(k)/k, exact");
    measure->add_flag("--z", mea.z, "Size of the greedy LZ76 parse");
    measure->add_flag("--gamma-bf", mea.gamma, "Smallest attractor, exhaustive search");
    measure->add_flag("--b-bf", mea.b, "Smallest bidirectional macro scheme, exhaustive search");
    measure->add_option("--limit", mea.limit, "Largest n accepted by the brute-force searches");
    measure->add_flag("--csv", mea.csv, "Header line and one value line");
    measure->add_flag("--strip-newline", mea.strip_newline, "Drop one trailing newline from the input");
    measure->add_option("--alphabet-check", mea.alphabet, "Reject bytes outside these characters");

    ConvertArgs con;
    auto* convert = app.add_subcommand("convert", "Convert a system to another kind");
    convert->add_option("path", con.path, "System file, or - for stdin")->required();
    convert->add_option("--from", con.from, "Input kind (default: header)")->check(kinds);
    convert->add_option("--to", con.to, "Output kind")->required()->check(kinds);
    convert->add_flag("--check", con.check, "Decode both systems and require identical output");

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write an L-system from a named family");
    generate->add_option("family", gen.family, "delta-sep, thue-morse or custom-morphism")
        ->required()
        ->check(CLI::IsMember({"delta-sep", "thue-morse", "custom-morphism"}));
    generate->add_option("--depth,-d", gen.depth, "Number of levels")->required();
    generate->add_option("--length,-n", gen.length, "Prefix length (default: whole level)");
    generate->add_option("--rule", gen.rules, "custom-morphism rule such as a->ab (one-byte symbols)");
    generate->add_option("--axiom", gen.axiom, "custom-morphism axiom, one symbol per byte");
    generate->add_option("--coding", gen.coding, "custom-morphism coding entry such as b->a");
    generate->add_flag("--text", gen.text, "Print the generated string instead of the system");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "Tables for the delta-sep and Thue-Morse families");
    experiment->add_option("name", exp.name, "delta-vs-ell or thue-morse-z")
        ->required()
        ->check(CLI::IsMember({"delta-vs-ell", "thue-morse-z"}));
    experiment->add_option("--d-min", exp.d_min, "First depth (k for thue-morse-z)");
    experiment->add_option("--d-max", exp.d_max, "Last depth");
    experiment->add_flag("--csv", exp.csv, "CSV: d,n,size,delta,z,elapsed_ms");
    experiment->add_flag("--timing", exp.timing, "Fill elapsed_ms (otherwise 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : 64;
    }

    try {
        if (*decode)
            return cmd_decode(dec);
        if (*validate)
            return cmd_validate(val);
        if (*measure)
            return cmd_measure(mea);
        if (*convert)
            return cmd_convert(con);
        if (*generate)
            return cmd_generate(gen);
        return cmd_experiment(exp);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const nusys::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const nusys::CycleError& e) {
        std::cerr << "cycle: " << e.what() << '\n';
        return kInvalid;
    } catch (const nusys::ValidityError& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return kInvalid;
    } catch (const nusys::LimitError& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kLimit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
