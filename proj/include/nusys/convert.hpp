#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "nusys/grammar.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/macro_scheme.hpp"
#include "nusys/macro_system.hpp"
#include "nusys/nusystem.hpp"

namespace nusys {

enum class SystemKind { Bms, Grammar, MacroSystem, LSystem, NuSystem };

// The header keyword: bms, grammar, macrosystem, lsystem, nusystem.
std::string_view kind_name(SystemKind kind);
std::optional<SystemKind> kind_from_name(std::string_view name);

// Kind named by the first non-comment token. Throws ParseError otherwise.
SystemKind detect_kind(std::string_view text);

using AnySystem = std::variant<Bms, Grammar, MacroSystem, LSystem, NUSystem>;

AnySystem parse_any(std::string_view text, std::optional<SystemKind> kind = std::nullopt);
SystemKind kind_of(const AnySystem& s);
std::string to_text(const AnySystem& s);
std::uint64_t size(const AnySystem& s);

// The represented string.
Text decode_any(const AnySystem& s);

// Supported pairs: bms->macrosystem, macrosystem->bms, lsystem->grammar,
// grammar->lsystem, macrosystem->nusystem, lsystem->nusystem, and any kind to
// itself. Others throw std::invalid_argument.
bool can_convert(SystemKind from, SystemKind to);
AnySystem convert(const AnySystem& s, SystemKind to);

// Decodes both and compares bytes. check_conversion throws ValidityError
// naming the first differing position.
bool outputs_match(const AnySystem& a, const AnySystem& b);
void check_conversion(const AnySystem& source, const AnySystem& target);

}  // namespace nusys
