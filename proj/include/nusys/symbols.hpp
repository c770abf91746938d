#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nusys {

using SymbolId = std::uint32_t;

// Interned symbol names for the rule-based systems. Ids are dense, in
// insertion order.
class SymbolTable {
public:
    SymbolTable() = default;
    explicit SymbolTable(const std::vector<std::string>& names);

    // Returns the existing id when the name is already present.
    SymbolId intern(std::string_view name);

    std::optional<SymbolId> find(std::string_view name) const;
    SymbolId at(std::string_view name) const;  // throws std::out_of_range

    const std::string& name(SymbolId id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    // `base`, or `base` followed by primes, whichever is not yet taken.
    std::string fresh_name(std::string base) const;

    friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> index_;
};

// Names may not contain whitespace, brackets, parentheses, commas or "->".
bool is_valid_symbol_name(std::string_view name);

}  // namespace nusys
