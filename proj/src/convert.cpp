#include "nusys/convert.hpp"

#include <algorithm>
#include <stdexcept>

#include "nusys/detail/lexer.hpp"

namespace nusys {

namespace {

constexpr std::pair<SystemKind, std::string_view> kKinds[] = {
    {SystemKind::Bms, "bms"},
    {SystemKind::Grammar, "grammar"},
    {SystemKind::MacroSystem, "macrosystem"},
    {SystemKind::LSystem, "lsystem"},
    {SystemKind::NuSystem, "nusystem"},
};

template <class... F>
struct Overload : F... {
    using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

}  // namespace

std::string_view kind_name(SystemKind kind) {
    for (const auto& [k, name] : kKinds)
        if (k == kind)
            return name;
    return "unknown";
}

std::optional<SystemKind> kind_from_name(std::string_view name) {
    for (const auto& [k, n] : kKinds)
        if (n == name)
            return k;
    return std::nullopt;
}

SystemKind detect_kind(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty input; expected a header (bms, grammar, macrosystem, lsystem or nusystem)");
    const auto& head = lines.front().tokens.front();
    if (auto k = kind_from_name(head.text))
        return *k;
    throw ParseError(lines.front().number, head.column,
                     "unknown header '" + std::string(head.text) +
                         "'; expected bms, grammar, macrosystem, lsystem or nusystem");
}

AnySystem parse_any(std::string_view text, std::optional<SystemKind> kind) {
    switch (kind.value_or(detect_kind(text))) {
    case SystemKind::Bms:
        return parse_bms(text);
    case SystemKind::Grammar:
        return parse_grammar(text);
    case SystemKind::MacroSystem:
        return parse_macro_system(text);
    case SystemKind::LSystem:
        return parse_lsystem(text);
    case SystemKind::NuSystem:
        return parse_nusystem(text);
    }
    throw std::invalid_argument("unknown system kind");
}

SystemKind kind_of(const AnySystem& s) { return static_cast<SystemKind>(s.index()); }

std::string to_text(const AnySystem& s) {
    return std::visit([](const auto& x) { return to_text(x); }, s);
}

std::uint64_t size(const AnySystem& s) {
    return std::visit(Overload{[](const Bms& b) { return static_cast<std::uint64_t>(b.size()); },
                               [](const auto& x) { return size(x); }},
                      s);
}

Text decode_any(const AnySystem& s) {
    return std::visit(Overload{[](const Bms& b) { return decode(b); },
                               [](const Grammar& g) { return expand(g); },
                               [](const MacroSystem& m) { return expand(m); },
                               [](const LSystem& l) { return generate(l); },
                               [](const NUSystem& n) { return expand(n); }},
                      s);
}

bool can_convert(SystemKind from, SystemKind to) {
    using K = SystemKind;
    if (from == to)
        return true;
    switch (from) {
    case K::Bms:
        return to == K::MacroSystem;
    case K::MacroSystem:
        return to == K::Bms || to == K::NuSystem;
    case K::LSystem:
        return to == K::Grammar || to == K::NuSystem;
    case K::Grammar:
        return to == K::LSystem;
    case K::NuSystem:
        return false;
    }
    return false;
}

AnySystem convert(const AnySystem& s, SystemKind to) {
    const SystemKind from = kind_of(s);
    if (!can_convert(from, to))
        throw std::invalid_argument("no conversion from " + std::string(kind_name(from)) + " to " +
                                    std::string(kind_name(to)));
    if (from == to)
        return s;
    if (const auto* b = std::get_if<Bms>(&s))
        return from_bms(*b);
    if (const auto* m = std::get_if<MacroSystem>(&s)) {
        if (to == SystemKind::Bms)
            return to_bms(*m);
        return from_macro_system(*m);
    }
    if (const auto* l = std::get_if<LSystem>(&s)) {
        if (to == SystemKind::Grammar)
            return to_grammar(*l);
        return from_lsystem(*l);
    }
    return from_grammar(std::get<Grammar>(s));
}

bool outputs_match(const AnySystem& a, const AnySystem& b) { return decode_any(a) == decode_any(b); }

void check_conversion(const AnySystem& source, const AnySystem& target) {
    const Text want = decode_any(source);
    const Text got = decode_any(target);
    if (want == got)
        return;
    const auto diff = std::mismatch(want.begin(), want.end(), got.begin(), got.end());
    const auto pos = static_cast<std::size_t>(diff.first - want.begin()) + 1;
    throw ValidityError("conversion check failed: " + std::string(kind_name(kind_of(source))) + " output (" +
                        std::to_string(want.size()) + " symbols) and " + std::string(kind_name(kind_of(target))) +
                        " output (" + std::to_string(got.size()) + " symbols) differ at position " +
                        std::to_string(pos));
}

}  // namespace nusys
