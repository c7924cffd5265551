#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "tkba/symbols.hpp"

namespace tkba {

// ALC concepts as hash-consed terms. Only the five primitive constructors
// are ever stored (TOP, name, negation, disjunction, existential); the
// derived forms (AND, FORALL, BOTTOM) are desugared by the builders below,
// and double negation is eliminated on construction. A Concept is a cheap
// handle; equal handles mean structurally equal terms.
class Concept {
public:
    Concept() : id_(0) {}  // TOP

    uint32_t id() const { return id_; }

    friend bool operator==(Concept a, Concept b) { return a.id_ == b.id_; }
    friend bool operator!=(Concept a, Concept b) { return a.id_ != b.id_; }
    friend bool operator<(Concept a, Concept b) { return a.id_ < b.id_; }

private:
    explicit Concept(uint32_t id) : id_(id) {}
    uint32_t id_;
    friend class ConceptArena;
};

Concept top();
Concept bottom();
Concept atom(ConceptName name);
Concept negation(Concept c);
Concept disjunction(Concept a, Concept b);
Concept conjunction(Concept a, Concept b);
Concept exists(RoleName role, Concept body);
Concept forall(RoleName role, Concept body);

Concept disjunction_of(const std::vector<Concept>& cs);   // empty -> BOTTOM
Concept conjunction_of(const std::vector<Concept>& cs);   // empty -> TOP

// Structural view that unfolds the stored abbreviations, so case analyses
// see the full ALC syntax while the representation stays five-constructor.
enum class ConceptKind : uint8_t { Top, Bot, Pos, Neg, And, Or, Exists, Forall };

struct ConceptView {
    ConceptKind kind;
    ConceptName name{};   // Pos / Neg
    RoleName role{};      // Exists / Forall
    Concept a{}, b{};     // And / Or children, Exists / Forall body in `a`
};

ConceptView view(Concept c);

// Negation normal form. With desugaring and double-negation elimination done
// at construction, every stored term is already its own NNF; this walks the
// term and rebuilds it canonically, so it doubles as a structural check.
Concept nnf(Concept c);

struct Assertion {
    // ConceptAssertion uses concept *names* only.
    struct ConceptAssertion {
        ConceptName concept_nm;
        IndividualName individual;
        auto key() const { return std::tuple(concept_nm.id, individual.id); }
    };
    struct RoleAssertion {
        RoleName role;
        IndividualName subject;
        IndividualName object;
        auto key() const { return std::tuple(role.id, subject.id, object.id); }
    };

    std::variant<ConceptAssertion, RoleAssertion> value;

    static Assertion concept(ConceptName a, IndividualName x) {
        return Assertion{ConceptAssertion{a, x}};
    }
    static Assertion role(RoleName r, IndividualName x, IndividualName y) {
        return Assertion{RoleAssertion{r, x, y}};
    }

    bool is_concept() const { return value.index() == 0; }
    const ConceptAssertion& as_concept() const { return std::get<0>(value); }
    const RoleAssertion& as_role() const { return std::get<1>(value); }

    friend bool operator==(const Assertion& a, const Assertion& b);
    friend bool operator<(const Assertion& a, const Assertion& b);
};

struct GCI {
    Concept lhs;
    Concept rhs;
    friend bool operator==(const GCI& a, const GCI& b) {
        return a.lhs == b.lhs && a.rhs == b.rhs;
    }
    friend bool operator<(const GCI& a, const GCI& b) {
        return std::tuple(a.lhs, a.rhs) < std::tuple(b.lhs, b.rhs);
    }
};

struct TBox {
    std::set<GCI> gcis;
};

struct ABox {
    std::set<Assertion> assertions;

    std::set<IndividualName> individuals() const;
};

struct KnowledgeBase {
    TBox tbox;
    ABox abox;
};

struct Signature {
    std::set<ConceptName> concepts;
    std::set<RoleName> roles;

    Signature& unite(const Signature& other);
    bool contains(const Signature& other) const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature_of(Concept c);
Signature signature_of(const TBox& t);
Signature signature_of(const ABox& a);
Signature signature_of(const KnowledgeBase& k);

}  // namespace tkba
