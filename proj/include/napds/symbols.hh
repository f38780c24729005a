// Interned symbol names. One table per problem instance; every other module
// exchanges dense integer ids and keeps a reference for printing.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace napds {

using SymbolId = std::uint32_t;
using Word = std::vector<SymbolId>;

/// The bottom-of-stack symbol, interned first in every table under "$".
inline constexpr SymbolId kBottom = 0;
inline constexpr std::string_view kBottomName = "$";

class SymbolTable {
public:
    SymbolTable();

    SymbolId intern(std::string_view name);
    std::optional<SymbolId> lookup(std::string_view name) const;
    const std::string& name(SymbolId id) const;
    std::size_t size() const noexcept { return names_.size(); }

    std::string format(const Word& word, std::string_view sep = " ") const;

private:
    std::vector<std::string> names_;
    std::map<std::string, SymbolId, std::less<>> ids_;
};

}  // namespace napds
