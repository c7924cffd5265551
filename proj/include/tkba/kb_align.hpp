#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tkba/cq.hpp"
#include "tkba/dl.hpp"
#include "tkba/reasoner.hpp"

namespace tkba {

struct ABoxOperation {
    enum class Kind : uint8_t { Insert, Remove };
    Kind kind;
    Assertion assertion;

    friend bool operator==(const ABoxOperation& a, const ABoxOperation& b) {
        return a.kind == b.kind && a.assertion == b.assertion;
    }
};

// A (possibly empty) sequence of insertions and removals; duplicates and
// no-ops are permitted by the calculus.
using ABoxModification = std::vector<ABoxOperation>;

// Per-operation costs, strictly positive. abox_unit is the cost of adding or
// removing a whole ABox in the temporal calculus.
class CostModel {
public:
    CostModel() = default;
    CostModel(double def_insert, double def_remove, double abox_unit = 1.0);

    double insert_cost(const Assertion& a) const;
    double remove_cost(const Assertion& a) const;
    double op_cost(const ABoxOperation& op) const;
    double abox_unit() const { return abox_unit_; }
    double min_op_cost() const;

    void set_insert_override(const Assertion& a, double cost);
    void set_remove_override(const Assertion& a, double cost);

private:
    double default_insert_ = 1.0;
    double default_remove_ = 1.0;
    double abox_unit_ = 1.0;
    std::map<Assertion, double> insert_overrides_;
    std::map<Assertion, double> remove_overrides_;
};

ABox apply_abox_mod(const ABoxModification& m, const ABox& a);
double cost_abox_mod(const ABoxModification& m, const CostModel& cm);

// Removes everything in `a`, then inserts everything in `target`;
// removals precede insertions, both in deterministic order.
ABoxModification trivial_modification(const ABox& a, const ABox& target);

struct NoWitness {};
using WitnessResult = std::variant<ABox, NoWitness>;

// Algorithm's first step: an ABox over the signature that is consistent with
// t and entails q, obtained from the canonical ABox (purifying first when
// the query mentions individuals), or NoWitness certifying query emptiness.
WitnessResult initial_witness(const TBox& t, const BoolQuery& q, const Signature& s);

struct KbAlignSolution {
    ABoxModification modification;
    double cost = 0;
    ABox aligned;
};

// Cost-optimal ABox modification making (T, mod(u, A)) consistent and
// entailing q; NoSolution (nullopt) exactly when the query is empty for
// sig(k) + sig(q) wrt T.
std::optional<KbAlignSolution> kb_align(const KnowledgeBase& k, const BoolQuery& q,
                                        const CostModel& cm);

// Shared search core: cheapest normalized modification of `a` whose outcome
// satisfies `accept` (consistency included in the predicate). Candidates
// range over assertions built from `sig` and `individual_pool`; `witness`
// guarantees a solution exists (it is reachable in the search space).
std::optional<KbAlignSolution> cheapest_modification(
    const ABox& a, const Signature& sig, const std::vector<IndividualName>& individual_pool,
    const ABox& witness, const CostModel& cm, const std::function<bool(const ABox&)>& accept);

}  // namespace tkba
