#pragma once

#include <map>
#include <memory>
#include <vector>

#include "tkba/automata.hpp"
#include "tkba/cq.hpp"
#include "tkba/dl.hpp"
#include "tkba/ltl.hpp"
#include "tkba/reasoner.hpp"

namespace tkba {

// TBox plus a finite (possibly empty) ABox sequence.
struct TemporalKB {
    TBox tbox;
    std::vector<ABox> aboxes;
};

// Temporal conjunctive query: LTL structure whose leaves are Boolean
// combinations of BCQs. Sugar (F, G, and, implies) is desugared by the
// builders, mirroring the LTL side.
class TCQ {
public:
    enum class Kind : uint8_t { Leaf, Not, Or, Next, Until };

    static TCQ leaf(BoolQuery q);
    static TCQ negation(TCQ q);
    static TCQ disjunction(TCQ a, TCQ b);
    static TCQ conjunction(TCQ a, TCQ b);
    static TCQ next(TCQ q);
    static TCQ until(TCQ a, TCQ b);
    static TCQ eventually(TCQ q);
    static TCQ always(TCQ q);
    static TCQ implies(TCQ a, TCQ b);

    Kind kind() const { return node_->kind; }
    const BoolQuery& as_leaf() const { return node_->leaf; }
    const TCQ& child_a() const { return node_->a; }
    const TCQ& child_b() const { return node_->b; }

    // Distinct leaf queries in first-occurrence order (the finite PBCQ set).
    std::vector<BoolQuery> leaf_queries() const;
    Signature signature() const;

private:
    struct NodeData {
        Kind kind;
        BoolQuery leaf;
        TCQ a, b;
        explicit NodeData(Kind k) : kind(k) {}
    };
    TCQ() = default;
    std::shared_ptr<const NodeData> node_;
};

// Proposition <-> leaf-query bijection plus the abstracted LTL formula.
struct PropAbstraction {
    std::vector<BoolQuery> props;  // prop i <-> props[i]
    LtlFormula ltl;

    int num_props() const { return static_cast<int>(props.size()); }
};

PropAbstraction prop_abstraction(const TCQ& q);

// A type is a subset of the propositions, carried as a bitmask.
using TypeSet = uint32_t;

// chi(Phi): asserts exactly the member queries and the negations of the
// rest, as one Boolean combination of BCQs.
BoolQuery chi(TypeSet members, const PropAbstraction& pa);

TypeSet type_of(const FiniteInterpretation& i, const PropAbstraction& pa);

// All types whose chi is satisfiable wrt t, ascending.
std::vector<TypeSet> consistent_types(const TBox& t, const PropAbstraction& pa);

// Ultimately periodic FO trace over a constant domain with a shared
// individual mapping.
class LassoTrace {
public:
    LassoTrace(std::vector<FiniteInterpretation> prefix, std::vector<FiniteInterpretation> loop);

    const std::vector<FiniteInterpretation>& prefix() const { return prefix_; }
    const std::vector<FiniteInterpretation>& loop() const { return loop_; }
    const FiniteInterpretation& at(size_t pos) const;
    size_t period_length() const { return prefix_.size() + loop_.size(); }

private:
    std::vector<FiniteInterpretation> prefix_;
    std::vector<FiniteInterpretation> loop_;
};

// Direct TCQ semantics on the unrolled trace (independent of the automaton
// pipeline; untils are least fixpoints over the lasso positions).
bool eval_tcq_lasso(const LassoTrace& tr, const TCQ& q);

// Does the unrolled trace model the TKB: position i models abox i for the
// declared prefix, and every position models the TBox.
bool is_tkb_model_prefix(const LassoTrace& tr, const TemporalKB& g);

// TBox reduct of the query DPA: letters whose chi is unsatisfiable wrt t are
// rerouted to a rejecting sink and all colors shift by one.
DPA t_reduct(const DPA& p, const TBox& t, const PropAbstraction& pa);

}  // namespace tkba
