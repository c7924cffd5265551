#pragma once

#include <cstdint>
#include <set>
#include <vector>

namespace tkba {

// LTL over propositions 0..k-1, hash-consed like Concept. Only the five core
// constructors are stored; F/G/and/implies are desugared by the builders
// (F f = (~f) U f, G f = ~(f U ~f)), and double negation is eliminated.
class LtlFormula {
public:
    LtlFormula() : id_(0) {}

    uint32_t id() const { return id_; }

    friend bool operator==(LtlFormula a, LtlFormula b) { return a.id_ == b.id_; }
    friend bool operator!=(LtlFormula a, LtlFormula b) { return a.id_ != b.id_; }
    friend bool operator<(LtlFormula a, LtlFormula b) { return a.id_ < b.id_; }

private:
    explicit LtlFormula(uint32_t id) : id_(id) {}
    uint32_t id_;
    friend class LtlArena;
};

LtlFormula ltl_prop(int prop);
LtlFormula ltl_not(LtlFormula f);
LtlFormula ltl_or(LtlFormula a, LtlFormula b);
LtlFormula ltl_and(LtlFormula a, LtlFormula b);
LtlFormula ltl_next(LtlFormula f);
LtlFormula ltl_until(LtlFormula a, LtlFormula b);
LtlFormula ltl_eventually(LtlFormula f);
LtlFormula ltl_always(LtlFormula f);
LtlFormula ltl_implies(LtlFormula a, LtlFormula b);

enum class LtlKind : uint8_t { Prop, Not, Or, Next, Until };

struct LtlView {
    LtlKind kind;
    int prop = -1;
    LtlFormula a{}, b{};
};

LtlView ltl_view(LtlFormula f);

std::set<int> ltl_props(LtlFormula f);

// Ultimately periodic word: prefix then loop forever. Letters are bitmasks
// over the proposition indices.
struct LassoWord {
    std::vector<uint32_t> prefix;
    std::vector<uint32_t> loop;  // nonempty
};

// Direct semantics on the unrolled word, computed by a least fixpoint over
// the finitely many positions of the lasso.
bool eval_ltl_lasso(const LassoWord& w, LtlFormula f);

}  // namespace tkba
