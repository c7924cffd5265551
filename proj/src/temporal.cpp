#include "tkba/temporal.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "tkba/errors.hpp"

namespace tkba {

TCQ TCQ::leaf(BoolQuery q) {
    TCQ out;
    auto node = std::make_shared<NodeData>(Kind::Leaf);
    node->leaf = std::move(q);
    out.node_ = std::move(node);
    return out;
}

TCQ TCQ::negation(TCQ q) {
    TCQ out;
    auto node = std::make_shared<NodeData>(Kind::Not);
    node->a = std::move(q);
    out.node_ = std::move(node);
    return out;
}

TCQ TCQ::disjunction(TCQ a, TCQ b) {
    TCQ out;
    auto node = std::make_shared<NodeData>(Kind::Or);
    node->a = std::move(a);
    node->b = std::move(b);
    out.node_ = std::move(node);
    return out;
}

TCQ TCQ::conjunction(TCQ a, TCQ b) {
    return negation(disjunction(negation(std::move(a)), negation(std::move(b))));
}

TCQ TCQ::next(TCQ q) {
    TCQ out;
    auto node = std::make_shared<NodeData>(Kind::Next);
    node->a = std::move(q);
    out.node_ = std::move(node);
    return out;
}

TCQ TCQ::until(TCQ a, TCQ b) {
    TCQ out;
    auto node = std::make_shared<NodeData>(Kind::Until);
    node->a = std::move(a);
    node->b = std::move(b);
    out.node_ = std::move(node);
    return out;
}

TCQ TCQ::eventually(TCQ q) { return until(negation(q), q); }

TCQ TCQ::always(TCQ q) { return negation(until(q, negation(q))); }

TCQ TCQ::implies(TCQ a, TCQ b) { return disjunction(negation(std::move(a)), std::move(b)); }

std::vector<BoolQuery> TCQ::leaf_queries() const {
    std::vector<BoolQuery> out;
    std::function<void(const TCQ&)> walk = [&](const TCQ& q) {
        switch (q.kind()) {
            case Kind::Leaf: {
                for (const BoolQuery& seen : out)
                    if (seen == q.as_leaf())
                        return;
                out.push_back(q.as_leaf());
                return;
            }
            case Kind::Not:
            case Kind::Next:
                walk(q.child_a());
                return;
            case Kind::Or:
            case Kind::Until:
                walk(q.child_a());
                walk(q.child_b());
                return;
        }
    };
    walk(*this);
    return out;
}

Signature TCQ::signature() const {
    Signature s;
    for (const BoolQuery& q : leaf_queries())
        s.unite(q.signature());
    return s;
}

PropAbstraction prop_abstraction(const TCQ& q) {
    PropAbstraction pa;
    pa.props = q.leaf_queries();
    auto prop_of = [&](const BoolQuery& leaf) {
        for (size_t i = 0; i < pa.props.size(); ++i)
            if (pa.props[i] == leaf)
                return static_cast<int>(i);
        throw std::logic_error("leaf not collected");
    };
    std::function<LtlFormula(const TCQ&)> build = [&](const TCQ& n) -> LtlFormula {
        switch (n.kind()) {
            case TCQ::Kind::Leaf:
                return ltl_prop(prop_of(n.as_leaf()));
            case TCQ::Kind::Not:
                return ltl_not(build(n.child_a()));
            case TCQ::Kind::Or:
                return ltl_or(build(n.child_a()), build(n.child_b()));
            case TCQ::Kind::Next:
                return ltl_next(build(n.child_a()));
            case TCQ::Kind::Until:
                return ltl_until(build(n.child_a()), build(n.child_b()));
        }
        throw std::logic_error("unreachable");
    };
    pa.ltl = build(q);
    return pa;
}

BoolQuery chi(TypeSet members, const PropAbstraction& pa) {
    std::vector<BoolQuery> conjuncts;
    for (int i = 0; i < pa.num_props(); ++i) {
        if ((members >> i) & 1)
            conjuncts.push_back(pa.props[i]);
        else
            conjuncts.push_back(BoolQuery::negation(pa.props[i]));
    }
    if (conjuncts.empty())
        return BoolQuery::top();
    BoolQuery out = conjuncts.front();
    for (size_t i = 1; i < conjuncts.size(); ++i)
        out = BoolQuery::conjunction(out, conjuncts[i]);
    return out;
}

TypeSet type_of(const FiniteInterpretation& i, const PropAbstraction& pa) {
    TypeSet t = 0;
    for (int p = 0; p < pa.num_props(); ++p)
        if (eval_query(i, pa.props[p]))
            t |= 1u << p;
    return t;
}

std::vector<TypeSet> consistent_types(const TBox& t, const PropAbstraction& pa) {
    std::vector<TypeSet> out;
    for (TypeSet m = 0; m < (1u << pa.num_props()); ++m)
        if (satisfiable_with(t, chi(m, pa)))
            out.push_back(m);
    return out;
}

LassoTrace::LassoTrace(std::vector<FiniteInterpretation> prefix,
                       std::vector<FiniteInterpretation> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
    if (loop_.empty())
        throw std::invalid_argument("lasso loop must be nonempty");
    const FiniteInterpretation* first = nullptr;
    auto check = [&](const FiniteInterpretation& i) {
        if (!first) {
            first = &i;
            return;
        }
        if (i.domain_size != first->domain_size || i.ind_map != first->ind_map)
            throw std::invalid_argument(
                "lasso trace requires a constant domain and individual mapping");
    };
    for (const auto& i : prefix_)
        check(i);
    for (const auto& i : loop_)
        check(i);
}

const FiniteInterpretation& LassoTrace::at(size_t pos) const {
    if (pos < prefix_.size())
        return prefix_[pos];
    return loop_[(pos - prefix_.size()) % loop_.size()];
}

bool eval_tcq_lasso(const LassoTrace& tr, const TCQ& q) {
    size_t p = tr.prefix().size();
    size_t n = tr.period_length();
    auto next_pos = [&](size_t pos) { return pos + 1 < n ? pos + 1 : p; };

    // Truth table per subformula over the lasso positions, children first;
    // Until is a least fixpoint iterated from false.
    std::function<std::vector<bool>(const TCQ&)> eval = [&](const TCQ& g) -> std::vector<bool> {
        std::vector<bool> v(n, false);
        switch (g.kind()) {
            case TCQ::Kind::Leaf: {
                for (size_t pos = 0; pos < n; ++pos)
                    v[pos] = eval_query(tr.at(pos), g.as_leaf());
                return v;
            }
            case TCQ::Kind::Not: {
                auto a = eval(g.child_a());
                for (size_t pos = 0; pos < n; ++pos)
                    v[pos] = !a[pos];
                return v;
            }
            case TCQ::Kind::Or: {
                auto a = eval(g.child_a());
                auto b = eval(g.child_b());
                for (size_t pos = 0; pos < n; ++pos)
                    v[pos] = a[pos] || b[pos];
                return v;
            }
            case TCQ::Kind::Next: {
                auto a = eval(g.child_a());
                for (size_t pos = 0; pos < n; ++pos)
                    v[pos] = a[next_pos(pos)];
                return v;
            }
            case TCQ::Kind::Until: {
                auto a = eval(g.child_a());
                auto b = eval(g.child_b());
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (size_t pos = 0; pos < n; ++pos) {
                        bool nv = b[pos] || (a[pos] && v[next_pos(pos)]);
                        if (nv && !v[pos]) {
                            v[pos] = true;
                            changed = true;
                        }
                    }
                }
                return v;
            }
        }
        throw std::logic_error("unreachable");
    };
    return eval(q)[0];
}

bool is_tkb_model_prefix(const LassoTrace& tr, const TemporalKB& g) {
    for (size_t i = 0; i < g.aboxes.size(); ++i) {
        const FiniteInterpretation& interp = tr.at(i);
        for (const auto& a : g.aboxes[i].assertions)
            if (!satisfies(interp, a))
                return false;
    }
    KnowledgeBase tb_only{g.tbox, ABox{}};
    for (const auto& i : tr.prefix())
        if (!is_model(i, tb_only))
            return false;
    for (const auto& i : tr.loop())
        if (!is_model(i, tb_only))
            return false;
    return true;
}

DPA t_reduct(const DPA& p, const TBox& t, const PropAbstraction& pa) {
    if (p.num_props != pa.num_props())
        throw std::invalid_argument("automaton alphabet does not match the abstraction");
    std::vector<bool> allowed(p.num_letters(), false);
    for (TypeSet m : consistent_types(t, pa))
        allowed[m] = true;
    return reduct_with_sink(p, allowed);
}

}  // namespace tkba
