#include "nusys/macro_scheme.hpp"

#include <cstdint>

#include "nusys/detail/lexer.hpp"
#include "nusys/error.hpp"

namespace nusys {

namespace {

constexpr Length kBottom = 0;

// f as a flat 1-based table: f[i-1] in [1,n], or kBottom.
std::vector<Length> build_map(std::span<const Phrase> phrases, Length n) {
    std::vector<Length> f(n, kBottom);
    Length p = 1;
    for (const auto& ph : phrases) {
        if (const auto* c = std::get_if<Copy>(&ph)) {
            for (Length t = 0; t < c->length; ++t)
                f[p - 1 + t] = c->source + t;
        }
        p += phrase_length(ph);
    }
    return f;
}

enum class Mark : std::uint8_t { unvisited, on_path, done };

}  // namespace

BidirectionalMacroScheme::BidirectionalMacroScheme(std::vector<Phrase> phrases, Length n)
    : phrases_(std::move(phrases)), n_(n) {
    Length total = 0;
    for (std::size_t k = 0; k < phrases_.size(); ++k) {
        if (const auto* c = std::get_if<Copy>(&phrases_[k])) {
            if (c->length < 2)
                throw ValidityError("phrase " + std::to_string(k + 1) + ": copy of length " +
                                    std::to_string(c->length) + " (copies need length >= 2)");
            if (c->source < 1 || c->source > n_ || c->length - 1 > n_ - c->source)
                throw ValidityError("phrase " + std::to_string(k + 1) + ": source range [" +
                                    std::to_string(c->source) + "," + std::to_string(c->source + c->length - 1) +
                                    "] outside [1," + std::to_string(n_) + "]");
        }
        total = checked_add(total, phrase_length(phrases_[k]));
    }
    if (total != n_)
        throw ValidityError("phrase lengths sum to " + std::to_string(total) + " but n=" + std::to_string(n_));
}

std::vector<std::optional<Length>> position_map(const Bms& scheme) {
    const auto f = build_map(scheme.phrases(), scheme.length());
    std::vector<std::optional<Length>> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != kBottom)
            out[i] = f[i];
    return out;
}

std::optional<Length> detail::find_cycle(std::span<const Phrase> phrases, Length n) {
    const auto f = build_map(phrases, n);
    std::vector<Mark> mark(n, Mark::unvisited);
    std::vector<Length> path;
    for (Length start = 1; start <= n; ++start) {
        if (mark[start - 1] != Mark::unvisited)
            continue;
        path.clear();
        Length i = start;
        while (i != kBottom && mark[i - 1] == Mark::unvisited) {
            mark[i - 1] = Mark::on_path;
            path.push_back(i);
            i = f[i - 1];
        }
        if (i != kBottom && mark[i - 1] == Mark::on_path)
            return i;
        for (Length q : path)
            mark[q - 1] = Mark::done;
    }
    return std::nullopt;
}

std::optional<Length> find_cycle(const Bms& scheme) {
    return detail::find_cycle(scheme.phrases(), scheme.length());
}

Text decode(const Bms& scheme) {
    const Length n = scheme.length();
    const auto f = build_map(scheme.phrases(), n);
    Text w(n, '\0');
    std::vector<Mark> mark(n, Mark::unvisited);
    {
        Length p = 1;
        for (const auto& ph : scheme.phrases()) {
            if (const auto* lit = std::get_if<Literal>(&ph)) {
                w[p - 1] = lit->symbol;
                mark[p - 1] = Mark::done;
            }
            p += phrase_length(ph);
        }
    }
    std::vector<Length> path;
    for (Length start = 1; start <= n; ++start) {
        if (mark[start - 1] == Mark::done)
            continue;
        path.clear();
        Length i = start;
        while (mark[i - 1] == Mark::unvisited) {
            mark[i - 1] = Mark::on_path;
            path.push_back(i);
            i = f[i - 1];
        }
        if (mark[i - 1] == Mark::on_path)
            throw CycleError("invalid macro scheme: position " + std::to_string(i) +
                             " copies from itself through a cycle of sources");
        const char c = w[i - 1];
        for (Length q : path) {
            w[q - 1] = c;
            mark[q - 1] = Mark::done;
        }
    }
    return w;
}

Bms from_lz(const LzParse& parse) {
    std::vector<Phrase> phrases;
    phrases.reserve(parse.phrases.size());
    Length n = 0;
    for (const auto& ph : parse.phrases) {
        if (ph.length >= 2)
            phrases.emplace_back(Copy{*ph.source, ph.length});
        else
            phrases.emplace_back(Literal{ph.symbol});
        n += ph.length;
    }
    return Bms(std::move(phrases), n);
}

Bms parse_bms(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines.front().tokens.front().text != "bms")
        throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "expected header 'bms n=<N>'");
    const auto& header = lines.front();
    if (header.tokens.size() != 2)
        detail::fail(header, "expected header 'bms n=<N>'");
    const Length n = detail::parse_keyed_count(header.tokens[1], header.number, "n");

    std::vector<Phrase> phrases;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const auto& kw = line.tokens.front();
        if (kw.text == "lit") {
            if (line.tokens.size() != 2)
                detail::fail(line, kw, "expected 'lit <symbol>'");
            phrases.emplace_back(Literal{detail::parse_byte_symbol(line.tokens[1], line.number)});
        } else if (kw.text == "copy") {
            if (line.tokens.size() != 3)
                detail::fail(line, kw, "expected 'copy s=<pos> len=<L>'");
            const Length s = detail::parse_keyed_count(line.tokens[1], line.number, "s");
            const Length len = detail::parse_keyed_count(line.tokens[2], line.number, "len");
            phrases.emplace_back(Copy{s, len});
        } else {
            detail::fail(line, kw, "expected 'lit' or 'copy', got '" + std::string(kw.text) + "'");
        }
    }
    return Bms(std::move(phrases), n);
}

std::string to_text(const Bms& scheme) {
    std::string out = "bms n=" + std::to_string(scheme.length()) + "\n";
    for (const auto& ph : scheme.phrases()) {
        if (const auto* lit = std::get_if<Literal>(&ph))
            out += "lit " + detail::format_byte_symbol(lit->symbol) + "\n";
        else {
            const auto& c = std::get<Copy>(ph);
            out += "copy s=" + std::to_string(c.source) + " len=" + std::to_string(c.length) + "\n";
        }
    }
    return out;
}

}  // namespace nusys
