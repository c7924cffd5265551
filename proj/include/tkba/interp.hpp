#pragma once

#include <map>
#include <set>

#include "tkba/dl.hpp"

namespace tkba {

// Finite first-order interpretation over domain {0, .., domain_size-1}.
// Names without an entry get the empty extension; querying an unmapped
// individual is an error.
struct FiniteInterpretation {
    int domain_size = 0;
    std::map<ConceptName, std::set<int>> concept_ext;
    std::map<RoleName, std::set<std::pair<int, int>>> role_ext;
    std::map<IndividualName, int> ind_map;

    int element_of(IndividualName a) const;
    bool in_concept(ConceptName c, int d) const;
    bool in_role(RoleName r, int d, int e) const;
};

std::set<int> eval_concept(const FiniteInterpretation& i, Concept c);

bool satisfies(const FiniteInterpretation& i, const Assertion& a);
bool is_model(const FiniteInterpretation& i, const KnowledgeBase& k);

}  // namespace tkba
