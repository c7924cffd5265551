#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "tkba/dl.hpp"
#include "tkba/interp.hpp"

namespace tkba {

using Term = std::variant<Variable, IndividualName>;

inline bool is_var(const Term& t) { return t.index() == 0; }
inline Variable as_var(const Term& t) { return std::get<0>(t); }
inline IndividualName as_ind(const Term& t) { return std::get<1>(t); }

struct ConceptAtom {
    ConceptName concept_nm;
    Term arg;
};

struct RoleAtom {
    RoleName role;
    Term subject;
    Term object;
};

// Conjunctive query with set semantics on atoms. Construction canonicalizes:
// atoms are sorted and deduplicated, unused existential variables dropped,
// and bound variables renamed to a canonical numbering so that syntactic
// identity is insensitive to the author's choice of bound names.
class CQ {
public:
    CQ() = default;
    CQ(std::vector<Variable> exist_vars, std::vector<ConceptAtom> concept_atoms,
       std::vector<RoleAtom> role_atoms);

    const std::vector<Variable>& exist_vars() const { return exist_vars_; }
    const std::vector<ConceptAtom>& concept_atoms() const { return concept_atoms_; }
    const std::vector<RoleAtom>& role_atoms() const { return role_atoms_; }

    // Free variables in first-occurrence order.
    const std::vector<Variable>& free_vars() const { return free_vars_; }

    bool is_boolean() const { return free_vars_.empty(); }
    bool is_pure() const;         // no individual names
    bool has_atoms() const { return !concept_atoms_.empty() || !role_atoms_.empty(); }

    std::set<IndividualName> individuals() const;
    Signature signature() const;

    CQ substitute(const std::map<Variable, IndividualName>& binding) const;

    friend bool operator==(const CQ& a, const CQ& b);
    friend bool operator<(const CQ& a, const CQ& b);

private:
    std::vector<Variable> exist_vars_;
    std::vector<ConceptAtom> concept_atoms_;
    std::vector<RoleAtom> role_atoms_;
    std::vector<Variable> free_vars_;
};

// Boolean combination of CQs: LEAF | NOT | OR, with AND as sugar.
class BoolQuery {
public:
    enum class Kind : uint8_t { Leaf, Not, Or };

    static BoolQuery leaf(CQ cq);
    static BoolQuery negation(BoolQuery q);
    static BoolQuery disjunction(BoolQuery a, BoolQuery b);
    static BoolQuery conjunction(BoolQuery a, BoolQuery b);
    static BoolQuery top();      // empty conjunctive query, always satisfied
    static BoolQuery bottom();   // its negation

    Kind kind() const { return node_->kind; }
    const CQ& as_leaf() const { return node_->cq; }
    const BoolQuery& child_a() const { return node_->a; }
    const BoolQuery& child_b() const { return node_->b; }

    bool is_boolean() const;
    std::vector<Variable> free_vars() const;                // first-occurrence order
    std::vector<IndividualName> individuals_in_order() const;
    std::set<IndividualName> individuals() const;
    Signature signature() const;
    std::vector<CQ> leaves() const;

    BoolQuery substitute(const std::map<Variable, IndividualName>& binding) const;

    friend bool operator==(const BoolQuery& a, const BoolQuery& b);
    friend bool operator<(const BoolQuery& a, const BoolQuery& b);

private:
    struct NodeData {
        Kind kind;
        CQ cq;
        BoolQuery a, b;
        NodeData(Kind k, CQ c) : kind(k), cq(std::move(c)) {}
        NodeData(Kind k, BoolQuery x, BoolQuery y) : kind(k), a(std::move(x)), b(std::move(y)) {}
    };
    BoolQuery() = default;
    std::shared_ptr<const NodeData> node_;
};

// Model checking per the match semantics; exhaustive search over the finite
// domain. Requires a Boolean query.
bool eval_query(const FiniteInterpretation& i, const BoolQuery& q);
bool eval_cq(const FiniteInterpretation& i, const CQ& cq);

// Variable-connected components of a CQ's atom set. Atoms connect only
// through shared variables, so a query splits into independently evaluable
// pieces; ground atoms become singleton components.
std::vector<CQ> components(const CQ& cq);

// Tree-shaped CQ to concept translation. A pure directed tree rooted at a
// variable yields a concept C with I |= q iff C^I is nonempty; a tree rooted
// at an individual additionally returns that root.
struct RolledForm {
    Concept concept_term;
    std::optional<IndividualName> root;
};

RolledForm roll_up(const CQ& cq);

// Individual-elimination transform for query emptiness: fresh marker
// concepts replace the query's individuals, pairwise-disjointness axioms are
// added, and the signature is extended by the markers.
struct PurifiedQuery {
    TBox tbox;
    BoolQuery query;
    Signature sigma;
    std::vector<IndividualName> originals;   // a_1..a_m, first-occurrence order
    std::vector<ConceptName> markers;        // fresh A_1..A_m
    std::vector<Variable> marker_vars;       // x_{a_1}..x_{a_m}
    bool was_pure = false;
};

PurifiedQuery purify(const TBox& t, const BoolQuery& q, const Signature& s);

// Inverse step on a witness ABox: drops marker assertions and renames the
// witness individuals (the last m components of the certain answer) back to
// the query's original individuals. Throws NonDistinctWitnesses if those
// components coincide.
ABox depurify_abox(const ABox& a_p, const std::vector<IndividualName>& answer,
                   const PurifiedQuery& p);

// Certain answers over the KB's (and query's) named individuals. Boolean
// queries yield {()} when entailed, the empty set otherwise.
std::set<std::vector<IndividualName>> certain_answers(const KnowledgeBase& k, const BoolQuery& q);

}  // namespace tkba
