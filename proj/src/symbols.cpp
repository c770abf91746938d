#include "nusys/symbols.hpp"

#include <stdexcept>

namespace nusys {

SymbolTable::SymbolTable(const std::vector<std::string>& names) {
    for (const auto& n : names)
        intern(n);
}

SymbolId SymbolTable::intern(std::string_view name) {
    if (auto it = index_.find(std::string(name)); it != index_.end())
        return it->second;
    const auto id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
    if (auto it = index_.find(std::string(name)); it != index_.end())
        return it->second;
    return std::nullopt;
}

SymbolId SymbolTable::at(std::string_view name) const {
    if (auto id = find(name))
        return *id;
    throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
}

std::string SymbolTable::fresh_name(std::string base) const {
    while (find(base))
        base += '\'';
    return base;
}

bool is_valid_symbol_name(std::string_view name) {
    if (name.empty() || name.find("->") != std::string_view::npos)
        return false;
    for (char c : name) {
        switch (c) {
        case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
        case '(': case ')': case '[': case ']': case ',':
            return false;
        default:
            break;
        }
    }
    return true;
}

}  // namespace nusys
