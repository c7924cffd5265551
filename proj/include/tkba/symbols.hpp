#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tkba {

// Interned names. Concept, role and individual names live in three disjoint
// namespaces, each with its own interner; equal text yields equal ids within
// a namespace.
enum class SymbolSpace : uint8_t { ConceptNs, RoleNs, IndividualNs, VariableNs };

template <SymbolSpace NS>
struct Symbol {
    uint32_t id = 0;

    friend bool operator==(Symbol a, Symbol b) { return a.id == b.id; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id != b.id; }
    friend bool operator<(Symbol a, Symbol b) { return a.id < b.id; }
};

using ConceptName = Symbol<SymbolSpace::ConceptNs>;
using RoleName = Symbol<SymbolSpace::RoleNs>;
using IndividualName = Symbol<SymbolSpace::IndividualNs>;
using Variable = Symbol<SymbolSpace::VariableNs>;

ConceptName concept_name(const std::string& text);
RoleName role_name(const std::string& text);
IndividualName individual_name(const std::string& text);
Variable variable(const std::string& text);

const std::string& text_of(ConceptName n);
const std::string& text_of(RoleName n);
const std::string& text_of(IndividualName n);
const std::string& text_of(Variable v);

// Fresh-name helpers. Reserved prefixes are rejected by the parsers, so
// generated names can never collide with user input.
inline constexpr const char* kReservedPrefix = "__p";
inline constexpr const char* kFreshIndividualPrefix = "__u";

ConceptName fresh_concept_name(const std::string& hint);
IndividualName fresh_individual_name(const std::string& hint);

}  // namespace tkba
