#include "tkba/cq.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "tkba/errors.hpp"
#include "tkba/reasoner.hpp"

namespace tkba {
namespace {

std::pair<size_t, uint32_t> term_key(const Term& t) {
    return {t.index(), is_var(t) ? as_var(t).id : as_ind(t).id};
}

auto concept_atom_key(const ConceptAtom& a) {
    return std::tuple(a.concept_nm.id, term_key(a.arg));
}

auto role_atom_key(const RoleAtom& a) {
    return std::tuple(a.role.id, term_key(a.subject), term_key(a.object));
}

void sort_dedupe(std::vector<ConceptAtom>& v) {
    std::sort(v.begin(), v.end(),
              [](const ConceptAtom& a, const ConceptAtom& b) {
                  return concept_atom_key(a) < concept_atom_key(b);
              });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const ConceptAtom& a, const ConceptAtom& b) {
                            return concept_atom_key(a) == concept_atom_key(b);
                        }),
            v.end());
}

void sort_dedupe(std::vector<RoleAtom>& v) {
    std::sort(v.begin(), v.end(), [](const RoleAtom& a, const RoleAtom& b) {
        return role_atom_key(a) < role_atom_key(b);
    });
    v.erase(std::unique(v.begin(), v.end(),
                        [](const RoleAtom& a, const RoleAtom& b) {
                            return role_atom_key(a) == role_atom_key(b);
                        }),
            v.end());
}

Term rename_term(const Term& t, const std::map<Variable, Variable>& m) {
    if (!is_var(t))
        return t;
    auto it = m.find(as_var(t));
    return it == m.end() ? t : Term{it->second};
}

using AtomLists = std::pair<std::vector<ConceptAtom>, std::vector<RoleAtom>>;

AtomLists rename_atoms(const std::vector<ConceptAtom>& cas, const std::vector<RoleAtom>& ras,
                       const std::map<Variable, Variable>& m) {
    AtomLists out;
    for (const auto& a : cas)
        out.first.push_back(ConceptAtom{a.concept_nm, rename_term(a.arg, m)});
    for (const auto& a : ras)
        out.second.push_back(RoleAtom{a.role, rename_term(a.subject, m), rename_term(a.object, m)});
    sort_dedupe(out.first);
    sort_dedupe(out.second);
    return out;
}

auto atoms_sort_key(const AtomLists& lists) {
    std::vector<std::tuple<uint32_t, std::pair<size_t, uint32_t>>> ck;
    for (const auto& a : lists.first)
        ck.push_back(concept_atom_key(a));
    std::vector<std::tuple<uint32_t, std::pair<size_t, uint32_t>, std::pair<size_t, uint32_t>>> rk;
    for (const auto& a : lists.second)
        rk.push_back(role_atom_key(a));
    return std::pair(ck, rk);
}

Variable canonical_bound_var(size_t i) { return variable("__b" + std::to_string(i)); }

}  // namespace

CQ::CQ(std::vector<Variable> exist_vars, std::vector<ConceptAtom> concept_atoms,
       std::vector<RoleAtom> role_atoms) {
    // Occurrence order over the atoms as given; drives free-variable order.
    std::vector<Variable> occurring;
    auto note = [&](const Term& t) {
        if (is_var(t) && std::find(occurring.begin(), occurring.end(), as_var(t)) == occurring.end())
            occurring.push_back(as_var(t));
    };
    for (const auto& a : concept_atoms)
        note(a.arg);
    for (const auto& a : role_atoms) {
        note(a.subject);
        note(a.object);
    }

    std::set<Variable> exist_set(exist_vars.begin(), exist_vars.end());
    std::vector<Variable> bound;
    for (Variable v : occurring) {
        if (exist_set.count(v))
            bound.push_back(v);
        else
            free_vars_.push_back(v);
    }

    // Canonical renaming of bound variables: for small queries pick the
    // numbering that minimizes the sorted atom lists, so syntactic identity
    // is independent of the author's bound names and atom order.
    size_t k = bound.size();
    std::map<Variable, Variable> best_map;
    if (k <= 6) {
        std::vector<size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        bool first = true;
        decltype(atoms_sort_key(AtomLists{})) best_key;
        do {
            std::map<Variable, Variable> m;
            for (size_t i = 0; i < k; ++i)
                m[bound[i]] = canonical_bound_var(perm[i]);
            auto renamed = rename_atoms(concept_atoms, role_atoms, m);
            auto key = atoms_sort_key(renamed);
            if (first || key < best_key) {
                first = false;
                best_key = key;
                best_map = m;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        for (size_t i = 0; i < k; ++i)
            best_map[bound[i]] = canonical_bound_var(i);
    }

    auto renamed = rename_atoms(concept_atoms, role_atoms, best_map);
    concept_atoms_ = std::move(renamed.first);
    role_atoms_ = std::move(renamed.second);
    for (size_t i = 0; i < k; ++i)
        exist_vars_.push_back(canonical_bound_var(i));
}

bool CQ::is_pure() const {
    for (const auto& a : concept_atoms_)
        if (!is_var(a.arg))
            return false;
    for (const auto& a : role_atoms_)
        if (!is_var(a.subject) || !is_var(a.object))
            return false;
    return true;
}

std::set<IndividualName> CQ::individuals() const {
    std::set<IndividualName> out;
    for (const auto& a : concept_atoms_)
        if (!is_var(a.arg))
            out.insert(as_ind(a.arg));
    for (const auto& a : role_atoms_) {
        if (!is_var(a.subject))
            out.insert(as_ind(a.subject));
        if (!is_var(a.object))
            out.insert(as_ind(a.object));
    }
    return out;
}

Signature CQ::signature() const {
    Signature s;
    for (const auto& a : concept_atoms_)
        s.concepts.insert(a.concept_nm);
    for (const auto& a : role_atoms_)
        s.roles.insert(a.role);
    return s;
}

CQ CQ::substitute(const std::map<Variable, IndividualName>& binding) const {
    auto sub = [&](const Term& t) -> Term {
        if (!is_var(t))
            return t;
        auto it = binding.find(as_var(t));
        return it == binding.end() ? t : Term{it->second};
    };
    std::vector<ConceptAtom> cas;
    std::vector<RoleAtom> ras;
    for (const auto& a : concept_atoms_)
        cas.push_back(ConceptAtom{a.concept_nm, sub(a.arg)});
    for (const auto& a : role_atoms_)
        ras.push_back(RoleAtom{a.role, sub(a.subject), sub(a.object)});
    return CQ(exist_vars_, std::move(cas), std::move(ras));
}

bool operator==(const CQ& a, const CQ& b) { return !(a < b) && !(b < a); }

bool operator<(const CQ& a, const CQ& b) {
    auto ka = atoms_sort_key({a.concept_atoms_, a.role_atoms_});
    auto kb = atoms_sort_key({b.concept_atoms_, b.role_atoms_});
    return std::tuple(a.exist_vars_.size(), ka) < std::tuple(b.exist_vars_.size(), kb);
}

BoolQuery BoolQuery::leaf(CQ cq) {
    BoolQuery q;
    q.node_ = std::make_shared<const NodeData>(Kind::Leaf, std::move(cq));
    return q;
}

BoolQuery BoolQuery::negation(BoolQuery q) {
    BoolQuery out;
    out.node_ = std::make_shared<const NodeData>(Kind::Not, std::move(q), BoolQuery());
    return out;
}

BoolQuery BoolQuery::disjunction(BoolQuery a, BoolQuery b) {
    BoolQuery out;
    out.node_ = std::make_shared<const NodeData>(Kind::Or, std::move(a), std::move(b));
    return out;
}

BoolQuery BoolQuery::conjunction(BoolQuery a, BoolQuery b) {
    return negation(disjunction(negation(std::move(a)), negation(std::move(b))));
}

BoolQuery BoolQuery::top() { return leaf(CQ()); }

BoolQuery BoolQuery::bottom() { return negation(top()); }

bool BoolQuery::is_boolean() const { return free_vars().empty(); }

std::vector<Variable> BoolQuery::free_vars() const {
    std::vector<Variable> out;
    std::function<void(const BoolQuery&)> walk = [&](const BoolQuery& q) {
        if (q.kind() == Kind::Leaf) {
            for (Variable v : q.as_leaf().free_vars())
                if (std::find(out.begin(), out.end(), v) == out.end())
                    out.push_back(v);
        } else {
            walk(q.child_a());
            if (q.kind() == Kind::Or)
                walk(q.child_b());
        }
    };
    walk(*this);
    return out;
}

std::vector<IndividualName> BoolQuery::individuals_in_order() const {
    std::vector<IndividualName> out;
    std::function<void(const BoolQuery&)> walk = [&](const BoolQuery& q) {
        if (q.kind() == Kind::Leaf) {
            const CQ& cq = q.as_leaf();
            auto note = [&](const Term& t) {
                if (!is_var(t) &&
                    std::find(out.begin(), out.end(), as_ind(t)) == out.end())
                    out.push_back(as_ind(t));
            };
            for (const auto& a : cq.concept_atoms())
                note(a.arg);
            for (const auto& a : cq.role_atoms()) {
                note(a.subject);
                note(a.object);
            }
        } else {
            walk(q.child_a());
            if (q.kind() == Kind::Or)
                walk(q.child_b());
        }
    };
    walk(*this);
    return out;
}

std::set<IndividualName> BoolQuery::individuals() const {
    auto v = individuals_in_order();
    return {v.begin(), v.end()};
}

Signature BoolQuery::signature() const {
    Signature s;
    for (const CQ& cq : leaves())
        s.unite(cq.signature());
    return s;
}

std::vector<CQ> BoolQuery::leaves() const {
    std::vector<CQ> out;
    std::function<void(const BoolQuery&)> walk = [&](const BoolQuery& q) {
        if (q.kind() == Kind::Leaf) {
            out.push_back(q.as_leaf());
        } else {
            walk(q.child_a());
            if (q.kind() == Kind::Or)
                walk(q.child_b());
        }
    };
    walk(*this);
    return out;
}

BoolQuery BoolQuery::substitute(const std::map<Variable, IndividualName>& binding) const {
    switch (kind()) {
        case Kind::Leaf:
            return leaf(as_leaf().substitute(binding));
        case Kind::Not:
            return negation(child_a().substitute(binding));
        case Kind::Or:
            return disjunction(child_a().substitute(binding), child_b().substitute(binding));
    }
    throw std::logic_error("unreachable");
}

bool operator==(const BoolQuery& a, const BoolQuery& b) { return !(a < b) && !(b < a); }

bool operator<(const BoolQuery& a, const BoolQuery& b) {
    if (a.kind() != b.kind())
        return a.kind() < b.kind();
    switch (a.kind()) {
        case BoolQuery::Kind::Leaf:
            return a.as_leaf() < b.as_leaf();
        case BoolQuery::Kind::Not:
            return a.child_a() < b.child_a();
        case BoolQuery::Kind::Or:
            if (a.child_a() < b.child_a())
                return true;
            if (b.child_a() < a.child_a())
                return false;
            return a.child_b() < b.child_b();
    }
    throw std::logic_error("unreachable");
}

bool eval_cq(const FiniteInterpretation& i, const CQ& cq) {
    if (!cq.is_boolean())
        throw std::invalid_argument("eval_cq requires a Boolean query");
    const auto& vars = cq.exist_vars();
    std::map<Variable, int> assignment;
    auto term_elem = [&](const Term& t) {
        return is_var(t) ? assignment.at(as_var(t)) : i.element_of(as_ind(t));
    };
    std::function<bool(size_t)> search = [&](size_t idx) -> bool {
        if (idx == vars.size()) {
            for (const auto& a : cq.concept_atoms())
                if (!i.in_concept(a.concept_nm, term_elem(a.arg)))
                    return false;
            for (const auto& a : cq.role_atoms())
                if (!i.in_role(a.role, term_elem(a.subject), term_elem(a.object)))
                    return false;
            return true;
        }
        for (int d = 0; d < i.domain_size; ++d) {
            assignment[vars[idx]] = d;
            if (search(idx + 1))
                return true;
        }
        return false;
    };
    if (i.domain_size == 0 && !vars.empty())
        return false;
    return search(0);
}

bool eval_query(const FiniteInterpretation& i, const BoolQuery& q) {
    switch (q.kind()) {
        case BoolQuery::Kind::Leaf:
            return eval_cq(i, q.as_leaf());
        case BoolQuery::Kind::Not:
            return !eval_query(i, q.child_a());
        case BoolQuery::Kind::Or:
            return eval_query(i, q.child_a()) || eval_query(i, q.child_b());
    }
    throw std::logic_error("unreachable");
}

std::vector<CQ> components(const CQ& cq) {
    struct IndexedAtom {
        bool is_role;
        size_t idx;
    };
    std::vector<IndexedAtom> atoms;
    for (size_t i = 0; i < cq.concept_atoms().size(); ++i)
        atoms.push_back({false, i});
    for (size_t i = 0; i < cq.role_atoms().size(); ++i)
        atoms.push_back({true, i});
    if (atoms.empty())
        return {cq};

    std::vector<size_t> parent(atoms.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](size_t a, size_t b) { parent[find(a)] = find(b); };

    std::map<Variable, size_t> seen;
    auto link = [&](const Term& t, size_t atom_idx) {
        if (!is_var(t))
            return;
        auto it = seen.find(as_var(t));
        if (it == seen.end())
            seen.emplace(as_var(t), atom_idx);
        else
            unite(atom_idx, it->second);
    };
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (!atoms[i].is_role) {
            link(cq.concept_atoms()[atoms[i].idx].arg, i);
        } else {
            link(cq.role_atoms()[atoms[i].idx].subject, i);
            link(cq.role_atoms()[atoms[i].idx].object, i);
        }
    }

    std::map<size_t, std::pair<std::vector<ConceptAtom>, std::vector<RoleAtom>>> groups;
    for (size_t i = 0; i < atoms.size(); ++i) {
        auto& g = groups[find(i)];
        if (!atoms[i].is_role)
            g.first.push_back(cq.concept_atoms()[atoms[i].idx]);
        else
            g.second.push_back(cq.role_atoms()[atoms[i].idx]);
    }

    std::vector<CQ> out;
    for (auto& [root, g] : groups)
        out.push_back(CQ(cq.exist_vars(), std::move(g.first), std::move(g.second)));
    std::sort(out.begin(), out.end());
    return out;
}

RolledForm roll_up(const CQ& cq) {
    if (!cq.is_boolean())
        throw NotTreeShaped("query has free variables");
    if (!cq.has_atoms())
        return RolledForm{top(), std::nullopt};

    auto inds = cq.individuals();
    if (inds.size() > 1)
        throw NotTreeShaped("tree query may touch at most one individual");

    std::vector<Term> nodes;
    auto note = [&](const Term& t) {
        for (const auto& n : nodes)
            if (term_key(n) == term_key(t))
                return;
        nodes.push_back(t);
    };
    for (const auto& a : cq.concept_atoms())
        note(a.arg);
    for (const auto& a : cq.role_atoms()) {
        note(a.subject);
        note(a.object);
    }

    std::map<std::pair<size_t, uint32_t>, int> in_deg;
    for (const auto& n : nodes)
        in_deg[term_key(n)] = 0;
    for (const auto& a : cq.role_atoms())
        in_deg[term_key(a.object)]++;

    std::optional<Term> root;
    for (const auto& n : nodes) {
        int d = in_deg[term_key(n)];
        if (d == 0) {
            if (root)
                throw NotTreeShaped("atom graph is not connected");
            root = n;
        } else if (d > 1) {
            throw NotTreeShaped("a query node has two incoming role atoms");
        }
    }
    if (!root)
        throw NotTreeShaped("atom graph has a role cycle");
    if (!inds.empty() && (is_var(*root) || as_ind(*root) != *inds.begin()))
        throw NotTreeShaped("the individual must be the root of the tree");

    // Reachability from the root covers all nodes exactly when the directed
    // atom graph is an arborescence.
    std::function<Concept(const Term&, std::set<std::pair<size_t, uint32_t>>&)> build =
        [&](const Term& x, std::set<std::pair<size_t, uint32_t>>& visited) -> Concept {
        visited.insert(term_key(x));
        std::vector<Concept> parts;
        for (const auto& a : cq.concept_atoms())
            if (term_key(a.arg) == term_key(x))
                parts.push_back(atom(a.concept_nm));
        for (const auto& a : cq.role_atoms()) {
            if (term_key(a.subject) != term_key(x))
                continue;
            if (visited.count(term_key(a.object)))
                throw NotTreeShaped("a query node has two incoming role atoms");
            parts.push_back(exists(a.role, build(a.object, visited)));
        }
        return conjunction_of(parts);
    };
    std::set<std::pair<size_t, uint32_t>> visited;
    Concept c = build(*root, visited);
    if (visited.size() != nodes.size())
        throw NotTreeShaped("atom graph has a role cycle");

    RolledForm out{c, std::nullopt};
    if (!inds.empty())
        out.root = *inds.begin();
    return out;
}

PurifiedQuery purify(const TBox& t, const BoolQuery& q, const Signature& s) {
    PurifiedQuery out;
    out.originals = q.individuals_in_order();
    if (out.originals.empty()) {
        out.tbox = t;
        out.query = q;
        out.sigma = s;
        out.was_pure = true;
        return out;
    }
    size_t m = out.originals.size();

    // Reserved-prefix names are unavailable to the parsers, so freshness only
    // needs to dodge markers from earlier purifications embedded in inputs.
    Signature used = signature_of(t);
    used.unite(q.signature()).unite(s);
    size_t offset = 0;
    auto markers_fresh = [&](size_t off) {
        for (size_t i = 1; i <= m; ++i)
            if (used.concepts.count(concept_name(std::string(kReservedPrefix) +
                                                 std::to_string(off + i))))
                return false;
        return true;
    };
    while (!markers_fresh(offset))
        offset += m;
    for (size_t i = 1; i <= m; ++i)
        out.markers.push_back(concept_name(std::string(kReservedPrefix) + std::to_string(offset + i)));
    for (IndividualName a : out.originals)
        out.marker_vars.push_back(variable(std::string(kReservedPrefix) + "x_" + text_of(a)));

    std::map<IndividualName, Variable> to_var;
    for (size_t i = 0; i < m; ++i)
        to_var.emplace(out.originals[i], out.marker_vars[i]);

    auto purify_term = [&](const Term& t0) -> Term {
        if (is_var(t0))
            return t0;
        auto it = to_var.find(as_ind(t0));
        return it == to_var.end() ? t0 : Term{it->second};
    };
    std::function<BoolQuery(const BoolQuery&)> purify_tree = [&](const BoolQuery& n) -> BoolQuery {
        switch (n.kind()) {
            case BoolQuery::Kind::Leaf: {
                const CQ& cq = n.as_leaf();
                std::vector<ConceptAtom> cas;
                std::vector<RoleAtom> ras;
                for (const auto& a : cq.concept_atoms())
                    cas.push_back(ConceptAtom{a.concept_nm, purify_term(a.arg)});
                for (const auto& a : cq.role_atoms())
                    ras.push_back(RoleAtom{a.role, purify_term(a.subject), purify_term(a.object)});
                return BoolQuery::leaf(CQ(cq.exist_vars(), std::move(cas), std::move(ras)));
            }
            case BoolQuery::Kind::Not:
                return BoolQuery::negation(purify_tree(n.child_a()));
            case BoolQuery::Kind::Or:
                return BoolQuery::disjunction(purify_tree(n.child_a()), purify_tree(n.child_b()));
        }
        throw std::logic_error("unreachable");
    };

    out.tbox = t;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            out.tbox.gcis.insert(
                GCI{conjunction(atom(out.markers[i]), atom(out.markers[j])), bottom()});

    std::vector<ConceptAtom> marker_atoms;
    for (size_t i = 0; i < m; ++i)
        marker_atoms.push_back(ConceptAtom{out.markers[i], Term{out.marker_vars[i]}});
    BoolQuery phi_d = BoolQuery::leaf(CQ({}, std::move(marker_atoms), {}));

    out.query = BoolQuery::conjunction(purify_tree(q), phi_d);
    out.sigma = s;
    for (ConceptName a : out.markers)
        out.sigma.concepts.insert(a);
    return out;
}

ABox depurify_abox(const ABox& a_p, const std::vector<IndividualName>& answer,
                   const PurifiedQuery& p) {
    size_t m = p.markers.size();
    if (answer.size() < m)
        throw std::invalid_argument("certain answer shorter than marker count");
    std::vector<IndividualName> witnesses(answer.end() - m, answer.end());
    std::set<IndividualName> distinct(witnesses.begin(), witnesses.end());
    if (distinct.size() != m)
        throw NonDistinctWitnesses("purified witnesses are not pairwise distinct");

    std::set<ConceptName> marker_set(p.markers.begin(), p.markers.end());
    std::map<IndividualName, IndividualName> rename;
    for (size_t i = 0; i < m; ++i)
        rename.emplace(witnesses[i], p.originals[i]);
    auto rn = [&](IndividualName x) {
        auto it = rename.find(x);
        return it == rename.end() ? x : it->second;
    };

    ABox out;
    for (const auto& a : a_p.assertions) {
        if (a.is_concept()) {
            const auto& ca = a.as_concept();
            if (marker_set.count(ca.concept_nm))
                continue;
            out.assertions.insert(Assertion::concept(ca.concept_nm, rn(ca.individual)));
        } else {
            const auto& ra = a.as_role();
            out.assertions.insert(Assertion::role(ra.role, rn(ra.subject), rn(ra.object)));
        }
    }
    return out;
}

std::set<std::vector<IndividualName>> certain_answers(const KnowledgeBase& k, const BoolQuery& q) {
    std::set<std::vector<IndividualName>> out;
    std::vector<Variable> fvs = q.free_vars();
    if (fvs.empty()) {
        if (entails(k, q))
            out.insert({});
        return out;
    }

    std::set<IndividualName> cand_set = k.abox.individuals();
    auto qi = q.individuals();
    cand_set.insert(qi.begin(), qi.end());
    std::vector<IndividualName> cands(cand_set.begin(), cand_set.end());
    if (cands.empty())
        return out;

    std::vector<size_t> odo(fvs.size(), 0);
    while (true) {
        std::map<Variable, IndividualName> binding;
        std::vector<IndividualName> tuple;
        for (size_t i = 0; i < fvs.size(); ++i) {
            binding.emplace(fvs[i], cands[odo[i]]);
            tuple.push_back(cands[odo[i]]);
        }
        if (entails(k, q.substitute(binding)))
            out.insert(tuple);

        size_t pos = 0;
        while (pos < odo.size()) {
            if (++odo[pos] < cands.size())
                break;
            odo[pos++] = 0;
        }
        if (pos == odo.size())
            break;
    }
    return out;
}

}  // namespace tkba
