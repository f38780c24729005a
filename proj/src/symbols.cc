#include "napds/symbols.hh"

#include "napds/errors.hh"

namespace napds {

SymbolTable::SymbolTable() { intern(kBottomName); }

SymbolId SymbolTable::intern(std::string_view name) {
    if (auto it = ids_.find(name); it != ids_.end())
        return it->second;
    auto id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(std::string(name), id);
    return id;
}

std::optional<SymbolId> SymbolTable::lookup(std::string_view name) const {
    if (auto it = ids_.find(name); it != ids_.end())
        return it->second;
    return std::nullopt;
}

const std::string& SymbolTable::name(SymbolId id) const {
    if (id >= names_.size())
        throw ContractError("symbol id " + std::to_string(id) + " not interned");
    return names_[id];
}

std::string SymbolTable::format(const Word& word, std::string_view sep) const {
    if (word.empty())
        return "eps";
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += sep;
        out += name(word[i]);
    }
    return out;
}

}  // namespace napds
