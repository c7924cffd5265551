#pragma once

#include <optional>
#include <variant>

#include "tkba/cq.hpp"
#include "tkba/dl.hpp"
#include "tkba/interp.hpp"

namespace tkba {

// Concept satisfiability wrt a TBox, decided by a tableau with subset
// blocking; GCIs C (= D are internalized as TOP (= nnf(~C | D).
bool concept_satisfiable(Concept c, const TBox& t);

bool kb_consistent(const KnowledgeBase& k);

// Entailment of Boolean combinations of BCQs. Supported CQ fragment:
// tree-shaped (see roll_up) or fully grounded; anything else raises
// UnsupportedQueryShape.
bool entails(const KnowledgeBase& k, const BoolQuery& q);

// Satisfiability of a query together with a TBox: does some model of t
// satisfy q?
bool satisfiable_with(const TBox& t, const BoolQuery& q);

// Co-satisfiability with a full KB: does some model of k satisfy q?
bool co_satisfiable(const KnowledgeBase& k, const BoolQuery& q);

// Canonical ABox A over fresh individuals for a signature: (t, A) is
// consistent, and a Sigma-ABox is consistent with t iff it maps into A by an
// ABox homomorphism. One individual per satisfiable closure type.
ABox canonical_abox(const TBox& t, const Signature& sigma);

// Brute-force differential oracle: exhaustively enumerates finite
// interpretations with domain size <= n over the names of k and q.
struct Entailed {
    int bound;
};
struct CounterModel {
    FiniteInterpretation interpretation;
};
using BoundedResult = std::variant<Entailed, CounterModel>;

BoundedResult bounded_entails(const KnowledgeBase& k, const BoolQuery& q, int n);

// ABox homomorphism existence (brute force); shared by canonical-ABox
// property checks.
bool abox_homomorphism_exists(const ABox& from, const ABox& to);

}  // namespace tkba
