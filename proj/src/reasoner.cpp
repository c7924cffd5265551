#include "tkba/reasoner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

#include "tkba/errors.hpp"

namespace tkba {
namespace {

// ---------------------------------------------------------------------------
// Tableau with subset blocking.

struct TableauNode {
    std::set<Concept> label;
    std::vector<std::pair<RoleName, int>> children;  // tree successors
    int parent = -1;
    bool named = false;
    std::set<Concept> expanded_exists;
};

struct TableauState {
    std::vector<TableauNode> nodes;
    std::map<IndividualName, int> named;
    std::vector<std::tuple<RoleName, int, int>> named_edges;
};

struct TableauProblem {
    std::vector<Concept> universal;  // member of every node label
    std::map<IndividualName, std::set<Concept>> roots;
    std::set<std::tuple<RoleName, IndividualName, IndividualName>> edges;
};

bool has_clash(const TableauNode& n) {
    for (Concept c : n.label) {
        ConceptView v = view(c);
        if (v.kind == ConceptKind::Bot)
            return true;
        if (v.kind == ConceptKind::Neg && n.label.count(atom(v.name)))
            return true;
    }
    return false;
}

bool blocked(const TableauState& s, int idx) {
    const auto& label = s.nodes[idx].label;
    int anc = s.nodes[idx].parent;
    while (anc >= 0) {
        const auto& al = s.nodes[anc].label;
        if (std::includes(al.begin(), al.end(), label.begin(), label.end()))
            return true;
        anc = s.nodes[anc].parent;
    }
    return false;
}

// Successors of a node for a role: tree children plus named edges.
std::vector<int> successors(const TableauState& s, int idx, RoleName r) {
    std::vector<int> out;
    for (const auto& [role, child] : s.nodes[idx].children)
        if (role == r)
            out.push_back(child);
    for (const auto& [role, from, to] : s.named_edges)
        if (role == r && from == idx)
            out.push_back(to);
    return out;
}

bool expand(TableauState s, const std::vector<Concept>& universal);

// Applies the first applicable rule; deterministic scan order (node index,
// then concept id). Returns through `expand` on OR branches.
bool expand(TableauState s, const std::vector<Concept>& universal) {
    while (true) {
        for (const auto& n : s.nodes)
            if (has_clash(n))
                return false;

        bool applied = false;
        for (size_t i = 0; i < s.nodes.size() && !applied; ++i) {
            // Copy: rules below mutate the label being iterated.
            std::vector<Concept> label(s.nodes[i].label.begin(), s.nodes[i].label.end());
            for (Concept c : label) {
                ConceptView v = view(c);
                if (v.kind == ConceptKind::And) {
                    if (!s.nodes[i].label.count(v.a) || !s.nodes[i].label.count(v.b)) {
                        s.nodes[i].label.insert(v.a);
                        s.nodes[i].label.insert(v.b);
                        applied = true;
                        break;
                    }
                } else if (v.kind == ConceptKind::Or) {
                    if (!s.nodes[i].label.count(v.a) && !s.nodes[i].label.count(v.b)) {
                        TableauState left = s;
                        left.nodes[i].label.insert(v.a);
                        if (expand(std::move(left), universal))
                            return true;
                        s.nodes[i].label.insert(v.b);
                        applied = true;
                        break;
                    }
                } else if (v.kind == ConceptKind::Forall) {
                    for (int succ : successors(s, static_cast<int>(i), v.role)) {
                        if (!s.nodes[succ].label.count(v.a)) {
                            s.nodes[succ].label.insert(v.a);
                            applied = true;
                        }
                    }
                    if (applied)
                        break;
                }
            }
        }
        if (applied)
            continue;

        // Generating rule last, and only on unblocked nodes.
        for (size_t i = 0; i < s.nodes.size() && !applied; ++i) {
            if (blocked(s, static_cast<int>(i)))
                continue;
            std::vector<Concept> label(s.nodes[i].label.begin(), s.nodes[i].label.end());
            for (Concept c : label) {
                ConceptView v = view(c);
                if (v.kind != ConceptKind::Exists || s.nodes[i].expanded_exists.count(c))
                    continue;
                s.nodes[i].expanded_exists.insert(c);
                TableauNode child;
                child.parent = static_cast<int>(i);
                child.label.insert(v.a);
                for (Concept u : universal)
                    child.label.insert(u);
                for (Concept d : label) {
                    ConceptView dv = view(d);
                    if (dv.kind == ConceptKind::Forall && dv.role == v.role)
                        child.label.insert(dv.a);
                }
                int child_idx = static_cast<int>(s.nodes.size());
                s.nodes.push_back(std::move(child));
                s.nodes[i].children.emplace_back(v.role, child_idx);
                applied = true;
                break;
            }
        }
        if (!applied)
            return true;
    }
}

bool tableau_satisfiable(const TableauProblem& p) {
    TableauState s;
    for (const auto& [ind, label] : p.roots) {
        TableauNode n;
        n.named = true;
        n.label = label;
        for (Concept u : p.universal)
            n.label.insert(u);
        s.named.emplace(ind, static_cast<int>(s.nodes.size()));
        s.nodes.push_back(std::move(n));
    }
    for (const auto& [r, a, b] : p.edges)
        s.named_edges.emplace_back(r, s.named.at(a), s.named.at(b));
    if (s.nodes.empty()) {
        // No individuals: satisfiability of the universal constraints alone,
        // witnessed by a single anonymous element.
        TableauNode n;
        for (Concept u : p.universal)
            n.label.insert(u);
        s.nodes.push_back(std::move(n));
    }
    return expand(std::move(s), p.universal);
}

std::vector<Concept> internalize(const TBox& t) {
    std::vector<Concept> out;
    for (const auto& g : t.gcis)
        out.push_back(nnf(disjunction(negation(g.lhs), g.rhs)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Query satisfiability: leaves are split into variable-connected components,
// the Boolean skeleton is evaluated under every truth assignment of the
// distinct component set, and each admissible assignment becomes one
// conjunction of CQ-literals checked by the tableau.

struct Skeleton {
    // Nodes of the Boolean tree with leaves replaced by component indices.
    struct Node {
        BoolQuery::Kind kind;
        int leaf = -1;
        int a = -1, b = -1;
    };
    std::vector<Node> nodes;
    int root = -1;
    std::vector<CQ> leaves;

    int add_leaf(const CQ& cq) {
        for (size_t i = 0; i < leaves.size(); ++i)
            if (leaves[i] == cq)
                return static_cast<int>(i);
        leaves.push_back(cq);
        return static_cast<int>(leaves.size()) - 1;
    }

    bool eval(int node, uint32_t assignment) const {
        const Node& n = nodes[node];
        switch (n.kind) {
            case BoolQuery::Kind::Leaf:
                return (assignment >> n.leaf) & 1;
            case BoolQuery::Kind::Not:
                return !eval(n.a, assignment);
            case BoolQuery::Kind::Or:
                return eval(n.a, assignment) || eval(n.b, assignment);
        }
        return false;
    }
};

int build_skeleton(Skeleton& sk, const BoolQuery& q) {
    switch (q.kind()) {
        case BoolQuery::Kind::Leaf: {
            // AND of the leaf's components.
            std::vector<CQ> comps = components(q.as_leaf());
            std::vector<int> ids;
            for (const CQ& c : comps)
                ids.push_back(sk.add_leaf(c));
            // Fold into nested Or/Not per De Morgan: and(a,b) = ~(~a | ~b).
            std::function<int(size_t, size_t)> fold = [&](size_t lo, size_t hi) -> int {
                if (hi - lo == 1) {
                    sk.nodes.push_back({BoolQuery::Kind::Leaf, ids[lo], -1, -1});
                    return static_cast<int>(sk.nodes.size()) - 1;
                }
                size_t mid = (lo + hi) / 2;
                int l = fold(lo, mid);
                int r = fold(mid, hi);
                sk.nodes.push_back({BoolQuery::Kind::Not, -1, l, -1});
                int nl = static_cast<int>(sk.nodes.size()) - 1;
                sk.nodes.push_back({BoolQuery::Kind::Not, -1, r, -1});
                int nr = static_cast<int>(sk.nodes.size()) - 1;
                sk.nodes.push_back({BoolQuery::Kind::Or, -1, nl, nr});
                int o = static_cast<int>(sk.nodes.size()) - 1;
                sk.nodes.push_back({BoolQuery::Kind::Not, -1, o, -1});
                return static_cast<int>(sk.nodes.size()) - 1;
            };
            return fold(0, ids.size());
        }
        case BoolQuery::Kind::Not: {
            int a = build_skeleton(sk, q.child_a());
            sk.nodes.push_back({BoolQuery::Kind::Not, -1, a, -1});
            return static_cast<int>(sk.nodes.size()) - 1;
        }
        case BoolQuery::Kind::Or: {
            int a = build_skeleton(sk, q.child_a());
            int b = build_skeleton(sk, q.child_b());
            sk.nodes.push_back({BoolQuery::Kind::Or, -1, a, b});
            return static_cast<int>(sk.nodes.size()) - 1;
        }
    }
    throw std::logic_error("unreachable");
}

// One conjunction of CQ-literals over single-component Boolean CQs.
// Positive existential components are instantiated with fresh individuals;
// negated tree components are internalized as concepts; negated ground role
// atoms are checked syntactically (an ALC KB entails a role assertion only
// when it contains it).
bool literal_conjunction_satisfiable(const TBox& t, const ABox& a, const std::vector<CQ>& pos,
                                     const std::vector<CQ>& neg) {
    TableauProblem p;
    p.universal = internalize(t);

    std::set<std::tuple<RoleName, IndividualName, IndividualName>> role_facts;
    auto add_root = [&](IndividualName x) { p.roots.emplace(x, std::set<Concept>{}); };

    for (const auto& as : a.assertions) {
        if (as.is_concept()) {
            add_root(as.as_concept().individual);
            p.roots[as.as_concept().individual].insert(atom(as.as_concept().concept_nm));
        } else {
            const auto& ra = as.as_role();
            add_root(ra.subject);
            add_root(ra.object);
            role_facts.emplace(ra.role, ra.subject, ra.object);
        }
    }

    int fresh_counter = 0;
    for (const CQ& cq : pos) {
        if (!cq.has_atoms())
            continue;  // empty CQ: always satisfied
        if (cq.exist_vars().empty() && cq.concept_atoms().size() + cq.role_atoms().size() == 1) {
            if (!cq.concept_atoms().empty()) {
                const auto& ca = cq.concept_atoms().front();
                add_root(as_ind(ca.arg));
                p.roots[as_ind(ca.arg)].insert(atom(ca.concept_nm));
            } else {
                const auto& ra = cq.role_atoms().front();
                add_root(as_ind(ra.subject));
                add_root(as_ind(ra.object));
                role_facts.emplace(ra.role, as_ind(ra.subject), as_ind(ra.object));
            }
            continue;
        }
        RolledForm rf = roll_up(cq);
        if (rf.root) {
            add_root(*rf.root);
            p.roots[*rf.root].insert(rf.concept_term);
        } else {
            IndividualName u = fresh_individual_name("q" + std::to_string(fresh_counter++));
            add_root(u);
            p.roots[u].insert(rf.concept_term);
        }
    }

    for (const CQ& cq : neg) {
        if (!cq.has_atoms())
            return false;  // ~TOP is unsatisfiable
        if (cq.exist_vars().empty() && cq.concept_atoms().size() + cq.role_atoms().size() == 1) {
            if (!cq.concept_atoms().empty()) {
                const auto& ca = cq.concept_atoms().front();
                add_root(as_ind(ca.arg));
                p.roots[as_ind(ca.arg)].insert(negation(atom(ca.concept_nm)));
            } else {
                const auto& ra = cq.role_atoms().front();
                if (role_facts.count({ra.role, as_ind(ra.subject), as_ind(ra.object)}))
                    return false;
                // Otherwise some model omits the edge; nothing to assert.
            }
            continue;
        }
        RolledForm rf = roll_up(cq);
        if (rf.root) {
            add_root(*rf.root);
            p.roots[*rf.root].insert(negation(rf.concept_term));
        } else {
            p.universal.push_back(nnf(negation(rf.concept_term)));
        }
    }

    p.edges = role_facts;
    return tableau_satisfiable(p);
}

bool query_co_satisfiable(const TBox& t, const ABox& a, const BoolQuery& q) {
    Skeleton sk;
    sk.root = build_skeleton(sk, q);
    if (sk.leaves.size() > 16)
        throw DeskScaleExceeded("query has more than 16 distinct CQ components");

    for (const CQ& cq : sk.leaves)
        if (!cq.free_vars().empty())
            throw UnsupportedQueryShape("query has free variables");

    uint32_t count = 1u << sk.leaves.size();
    for (uint32_t assignment = 0; assignment < count; ++assignment) {
        if (!sk.eval(sk.root, assignment))
            continue;
        std::vector<CQ> pos, neg;
        for (size_t i = 0; i < sk.leaves.size(); ++i) {
            if ((assignment >> i) & 1)
                pos.push_back(sk.leaves[i]);
            else
                neg.push_back(sk.leaves[i]);
        }
        if (literal_conjunction_satisfiable(t, a, pos, neg))
            return true;
    }
    return false;
}

}  // namespace

bool concept_satisfiable(Concept c, const TBox& t) {
    TableauProblem p;
    p.universal = internalize(t);
    IndividualName u = fresh_individual_name("sat");
    p.roots.emplace(u, std::set<Concept>{nnf(c)});
    return tableau_satisfiable(p);
}

bool kb_consistent(const KnowledgeBase& k) {
    return query_co_satisfiable(k.tbox, k.abox, BoolQuery::top());
}

bool co_satisfiable(const KnowledgeBase& k, const BoolQuery& q) {
    return query_co_satisfiable(k.tbox, k.abox, q);
}

bool entails(const KnowledgeBase& k, const BoolQuery& q) {
    if (!q.is_boolean())
        throw UnsupportedQueryShape("entailment requires a Boolean query");
    return !query_co_satisfiable(k.tbox, k.abox, BoolQuery::negation(q));
}

bool satisfiable_with(const TBox& t, const BoolQuery& q) {
    return query_co_satisfiable(t, ABox{}, q);
}

ABox canonical_abox(const TBox& t, const Signature& sigma) {
    if (!concept_satisfiable(top(), t))
        throw UnsatisfiableTBox("canonical ABox requires a satisfiable TBox");

    // Closure: subconcepts (through views) of the internalized GCIs plus the
    // signature's concept names, organized into complementary pairs.
    std::set<Concept> closure;
    std::function<void(Concept)> collect = [&](Concept c) {
        if (closure.count(c))
            return;
        closure.insert(c);
        ConceptView v = view(c);
        switch (v.kind) {
            case ConceptKind::And:
            case ConceptKind::Or:
                collect(v.a);
                collect(v.b);
                break;
            case ConceptKind::Exists:
            case ConceptKind::Forall:
                collect(v.a);
                break;
            default:
                break;
        }
    };
    std::vector<Concept> universal = internalize(t);
    for (Concept u : universal)
        collect(u);
    for (ConceptName a : sigma.concepts)
        collect(atom(a));

    std::vector<Concept> reps;
    {
        std::set<Concept> seen;
        for (Concept c : closure) {
            Concept r = std::min(c, negation(c));
            if (seen.insert(r).second)
                reps.push_back(r);
        }
        std::sort(reps.begin(), reps.end());
    }
    if (reps.size() > 18)
        throw DeskScaleExceeded("closure too large for canonical ABox construction");

    // Enumerate Boolean-saturated, locally consistent subsets.
    std::vector<std::set<Concept>> types;
    uint32_t count = 1u << reps.size();
    for (uint32_t bits = 0; bits < count; ++bits) {
        std::set<Concept> members;
        for (size_t i = 0; i < reps.size(); ++i)
            members.insert((bits >> i) & 1 ? reps[i] : negation(reps[i]));
        bool ok = true;
        for (Concept u : universal)
            if (!members.count(u)) {
                ok = false;
                break;
            }
        for (Concept c : members) {
            if (!ok)
                break;
            ConceptView v = view(c);
            if (v.kind == ConceptKind::Bot)
                ok = false;
            else if (v.kind == ConceptKind::And)
                ok = members.count(v.a) && members.count(v.b);
            else if (v.kind == ConceptKind::Or)
                ok = members.count(v.a) || members.count(v.b);
        }
        if (!ok)
            continue;
        std::vector<Concept> all(members.begin(), members.end());
        if (concept_satisfiable(conjunction_of(all), t))
            types.push_back(std::move(members));
    }

    std::vector<IndividualName> inds;
    for (size_t i = 0; i < types.size(); ++i)
        inds.push_back(fresh_individual_name(std::to_string(i + 1)));

    ABox out;
    for (size_t i = 0; i < types.size(); ++i) {
        for (ConceptName a : sigma.concepts)
            if (types[i].count(atom(a)))
                out.assertions.insert(Assertion::concept(a, inds[i]));
        for (RoleName r : sigma.roles) {
            for (size_t j = 0; j < types.size(); ++j) {
                bool compatible = true;
                for (Concept c : types[i]) {
                    ConceptView v = view(c);
                    if (v.kind == ConceptKind::Forall && v.role == r &&
                        !types[j].count(v.a)) {
                        compatible = false;
                        break;
                    }
                }
                if (compatible)
                    out.assertions.insert(Assertion::role(r, inds[i], inds[j]));
            }
        }
    }
    return out;
}

BoundedResult bounded_entails(const KnowledgeBase& k, const BoolQuery& q, int n) {
    if (n < 1)
        throw BoundTooLarge("bound must be at least 1");
    Signature sig = signature_of(k);
    sig.unite(q.signature());
    std::set<IndividualName> ind_set = k.abox.individuals();
    auto qi = q.individuals();
    ind_set.insert(qi.begin(), qi.end());
    std::vector<ConceptName> concepts(sig.concepts.begin(), sig.concepts.end());
    std::vector<RoleName> roles(sig.roles.begin(), sig.roles.end());
    std::vector<IndividualName> inds(ind_set.begin(), ind_set.end());

    double work = 0;
    for (int m = 1; m <= n; ++m) {
        double w = 1;
        for (size_t i = 0; i < concepts.size(); ++i)
            w *= std::pow(2.0, m);
        for (size_t i = 0; i < roles.size(); ++i)
            w *= std::pow(2.0, m * m);
        for (size_t i = 0; i < inds.size(); ++i)
            w *= m;
        work += w;
    }
    if (work > 5e7)
        throw BoundTooLarge("bounded enumeration would exceed the desk-scale budget");

    for (int m = 1; m <= n; ++m) {
        int cbits = static_cast<int>(concepts.size()) * m;
        int rbits = static_cast<int>(roles.size()) * m * m;
        uint64_t climit = 1ull << cbits;
        uint64_t rlimit = 1ull << rbits;
        uint64_t ilimit = 1;
        for (size_t i = 0; i < inds.size(); ++i)
            ilimit *= m;

        for (uint64_t cb = 0; cb < climit; ++cb) {
            for (uint64_t rb = 0; rb < rlimit; ++rb) {
                for (uint64_t ib = 0; ib < ilimit; ++ib) {
                    FiniteInterpretation interp;
                    interp.domain_size = m;
                    int bit = 0;
                    for (ConceptName c : concepts) {
                        for (int d = 0; d < m; ++d, ++bit)
                            if ((cb >> bit) & 1)
                                interp.concept_ext[c].insert(d);
                    }
                    bit = 0;
                    for (RoleName r : roles) {
                        for (int d = 0; d < m; ++d)
                            for (int e = 0; e < m; ++e, ++bit)
                                if ((rb >> bit) & 1)
                                    interp.role_ext[r].insert({d, e});
                    }
                    uint64_t rem = ib;
                    for (IndividualName a : inds) {
                        interp.ind_map[a] = static_cast<int>(rem % m);
                        rem /= m;
                    }
                    if (is_model(interp, k) && !eval_query(interp, q))
                        return CounterModel{std::move(interp)};
                }
            }
        }
    }
    return Entailed{n};
}

bool abox_homomorphism_exists(const ABox& from, const ABox& to) {
    std::vector<IndividualName> src;
    for (IndividualName a : from.individuals())
        src.push_back(a);
    std::vector<IndividualName> dst;
    for (IndividualName a : to.individuals())
        dst.push_back(a);
    if (src.empty())
        return true;
    if (dst.empty())
        return false;

    std::vector<size_t> odo(src.size(), 0);
    while (true) {
        std::map<IndividualName, IndividualName> h;
        for (size_t i = 0; i < src.size(); ++i)
            h[src[i]] = dst[odo[i]];
        bool ok = true;
        for (const auto& a : from.assertions) {
            if (a.is_concept()) {
                const auto& ca = a.as_concept();
                if (!to.assertions.count(Assertion::concept(ca.concept_nm, h[ca.individual]))) {
                    ok = false;
                    break;
                }
            } else {
                const auto& ra = a.as_role();
                if (!to.assertions.count(
                        Assertion::role(ra.role, h[ra.subject], h[ra.object]))) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            return true;

        size_t pos = 0;
        while (pos < odo.size()) {
            if (++odo[pos] < dst.size())
                break;
            odo[pos++] = 0;
        }
        if (pos == odo.size())
            return false;
    }
}

}  // namespace tkba
