#include "tkba/interp.hpp"

#include <stdexcept>

namespace tkba {

int FiniteInterpretation::element_of(IndividualName a) const {
    auto it = ind_map.find(a);
    if (it == ind_map.end())
        throw std::invalid_argument("interpretation does not map individual " + text_of(a));
    return it->second;
}

bool FiniteInterpretation::in_concept(ConceptName c, int d) const {
    auto it = concept_ext.find(c);
    return it != concept_ext.end() && it->second.count(d) > 0;
}

bool FiniteInterpretation::in_role(RoleName r, int d, int e) const {
    auto it = role_ext.find(r);
    return it != role_ext.end() && it->second.count({d, e}) > 0;
}

std::set<int> eval_concept(const FiniteInterpretation& i, Concept c) {
    ConceptView v = view(c);
    std::set<int> out;
    switch (v.kind) {
        case ConceptKind::Top:
            for (int d = 0; d < i.domain_size; ++d)
                out.insert(d);
            return out;
        case ConceptKind::Bot:
            return out;
        case ConceptKind::Pos: {
            auto it = i.concept_ext.find(v.name);
            return it == i.concept_ext.end() ? out : it->second;
        }
        case ConceptKind::Neg: {
            for (int d = 0; d < i.domain_size; ++d)
                if (!i.in_concept(v.name, d))
                    out.insert(d);
            return out;
        }
        case ConceptKind::And: {
            auto ea = eval_concept(i, v.a);
            auto eb = eval_concept(i, v.b);
            for (int d : ea)
                if (eb.count(d))
                    out.insert(d);
            return out;
        }
        case ConceptKind::Or: {
            out = eval_concept(i, v.a);
            auto eb = eval_concept(i, v.b);
            out.insert(eb.begin(), eb.end());
            return out;
        }
        case ConceptKind::Exists: {
            auto body = eval_concept(i, v.a);
            auto it = i.role_ext.find(v.role);
            if (it == i.role_ext.end())
                return out;
            for (const auto& [d, e] : it->second)
                if (body.count(e))
                    out.insert(d);
            return out;
        }
        case ConceptKind::Forall: {
            auto body = eval_concept(i, v.a);
            auto it = i.role_ext.find(v.role);
            for (int d = 0; d < i.domain_size; ++d) {
                bool ok = true;
                if (it != i.role_ext.end()) {
                    for (const auto& [x, y] : it->second) {
                        if (x == d && !body.count(y)) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok)
                    out.insert(d);
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

bool satisfies(const FiniteInterpretation& i, const Assertion& a) {
    if (a.is_concept()) {
        const auto& ca = a.as_concept();
        return i.in_concept(ca.concept_nm, i.element_of(ca.individual));
    }
    const auto& ra = a.as_role();
    return i.in_role(ra.role, i.element_of(ra.subject), i.element_of(ra.object));
}

bool is_model(const FiniteInterpretation& i, const KnowledgeBase& k) {
    for (const auto& g : k.tbox.gcis) {
        auto lhs = eval_concept(i, g.lhs);
        auto rhs = eval_concept(i, g.rhs);
        for (int d : lhs)
            if (!rhs.count(d))
                return false;
    }
    for (const auto& a : k.abox.assertions)
        if (!satisfies(i, a))
            return false;
    return true;
}

}  // namespace tkba
