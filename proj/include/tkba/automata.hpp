#pragma once

#include <set>
#include <vector>

#include "tkba/ltl.hpp"

namespace tkba {

// Nondeterministic Buchi automaton over the alphabet 2^{0..num_props-1}.
// Letters are prop bitmasks used directly as indices; delta[state][letter]
// is a (possibly empty) sorted successor list.
struct NBA {
    int num_props = 0;
    int num_states = 0;
    std::set<int> initial;
    std::vector<std::vector<std::vector<int>>> delta;
    std::set<int> accepting;

    int num_letters() const { return 1 << num_props; }
};

// Deterministic parity automaton, min-even acceptance: a run is accepting
// iff the minimal color visited infinitely often is even.
struct DPA {
    int num_props = 0;
    int num_states = 0;
    int initial = 0;
    std::vector<std::vector<int>> delta;  // [state][letter], total
    std::vector<int> color;

    int num_letters() const { return 1 << num_props; }
};

// Closure-based translation: generalized Buchi over elementary subformula
// sets, degeneralized with a counter, then restricted to states that can
// still reach an accepting cycle.
NBA ltl_to_nba(LtlFormula f, int num_props);

// Safra determinization to a Rabin automaton followed by an index appearance
// record, yielding a min-even parity automaton with the same language.
DPA nba_to_dpa(const NBA& n);

DPA ltl_to_dpa(LtlFormula f, int num_props);

bool nba_accepts_lasso(const NBA& n, const LassoWord& w);
bool dpa_accepts_lasso(const DPA& p, const LassoWord& w);

// Acc(P): states from which some infinite run is accepting, i.e. states that
// reach a cycle whose minimal color is even.
std::set<int> dpa_accepting_set(const DPA& p);

// Reroutes every letter with letter_allowed[letter] == false to a fresh
// color-1 sink and shifts all original colors by one; the shared skeleton of
// the TBox reduct.
DPA reduct_with_sink(const DPA& p, const std::vector<bool>& letter_allowed);

}  // namespace tkba
