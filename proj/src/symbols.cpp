#include "tkba/symbols.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace tkba {
namespace {

// One interner per namespace. A mutex keeps interning safe when values are
// built from several threads; interned ids themselves are immutable.
struct Interner {
    std::mutex mu;
    std::map<std::string, uint32_t> ids;
    std::vector<std::string> texts;

    uint32_t intern(const std::string& text) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = ids.find(text);
        if (it != ids.end())
            return it->second;
        uint32_t id = static_cast<uint32_t>(texts.size());
        texts.push_back(text);
        ids.emplace(text, id);
        return id;
    }

    const std::string& text(uint32_t id) {
        std::lock_guard<std::mutex> lock(mu);
        if (id >= texts.size())
            throw std::out_of_range("unknown symbol id");
        return texts[id];
    }
};

Interner& interner(SymbolSpace ns) {
    static Interner tables[4];
    return tables[static_cast<int>(ns)];
}

}  // namespace

ConceptName concept_name(const std::string& text) {
    return ConceptName{interner(SymbolSpace::ConceptNs).intern(text)};
}
RoleName role_name(const std::string& text) {
    return RoleName{interner(SymbolSpace::RoleNs).intern(text)};
}
IndividualName individual_name(const std::string& text) {
    return IndividualName{interner(SymbolSpace::IndividualNs).intern(text)};
}
Variable variable(const std::string& text) {
    return Variable{interner(SymbolSpace::VariableNs).intern(text)};
}

const std::string& text_of(ConceptName n) { return interner(SymbolSpace::ConceptNs).text(n.id); }
const std::string& text_of(RoleName n) { return interner(SymbolSpace::RoleNs).text(n.id); }
const std::string& text_of(IndividualName n) { return interner(SymbolSpace::IndividualNs).text(n.id); }
const std::string& text_of(Variable v) { return interner(SymbolSpace::VariableNs).text(v.id); }

ConceptName fresh_concept_name(const std::string& hint) {
    return concept_name(std::string(kReservedPrefix) + hint);
}
IndividualName fresh_individual_name(const std::string& hint) {
    return individual_name(std::string(kFreshIndividualPrefix) + hint);
}

}  // namespace tkba
