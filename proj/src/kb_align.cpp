#include "tkba/kb_align.hpp"

#include <algorithm>
#include <queue>

#include "tkba/errors.hpp"

namespace tkba {

CostModel::CostModel(double def_insert, double def_remove, double abox_unit)
    : default_insert_(def_insert), default_remove_(def_remove), abox_unit_(abox_unit) {
    if (def_insert <= 0 || def_remove <= 0 || abox_unit <= 0)
        throw std::invalid_argument("costs must be strictly positive");
}

double CostModel::insert_cost(const Assertion& a) const {
    auto it = insert_overrides_.find(a);
    return it == insert_overrides_.end() ? default_insert_ : it->second;
}

double CostModel::remove_cost(const Assertion& a) const {
    auto it = remove_overrides_.find(a);
    return it == remove_overrides_.end() ? default_remove_ : it->second;
}

double CostModel::op_cost(const ABoxOperation& op) const {
    return op.kind == ABoxOperation::Kind::Insert ? insert_cost(op.assertion)
                                                  : remove_cost(op.assertion);
}

double CostModel::min_op_cost() const {
    double m = std::min(default_insert_, default_remove_);
    for (const auto& [a, c] : insert_overrides_)
        m = std::min(m, c);
    for (const auto& [a, c] : remove_overrides_)
        m = std::min(m, c);
    return m;
}

void CostModel::set_insert_override(const Assertion& a, double cost) {
    if (cost <= 0)
        throw std::invalid_argument("costs must be strictly positive");
    insert_overrides_[a] = cost;
}

void CostModel::set_remove_override(const Assertion& a, double cost) {
    if (cost <= 0)
        throw std::invalid_argument("costs must be strictly positive");
    remove_overrides_[a] = cost;
}

ABox apply_abox_mod(const ABoxModification& m, const ABox& a) {
    ABox out = a;
    for (const auto& op : m) {
        if (op.kind == ABoxOperation::Kind::Insert)
            out.assertions.insert(op.assertion);
        else
            out.assertions.erase(op.assertion);
    }
    return out;
}

double cost_abox_mod(const ABoxModification& m, const CostModel& cm) {
    double c = 0;
    for (const auto& op : m)
        c += cm.op_cost(op);
    return c;
}

ABoxModification trivial_modification(const ABox& a, const ABox& target) {
    ABoxModification m;
    for (const auto& as : a.assertions)
        m.push_back(ABoxOperation{ABoxOperation::Kind::Remove, as});
    for (const auto& as : target.assertions)
        m.push_back(ABoxOperation{ABoxOperation::Kind::Insert, as});
    return m;
}

WitnessResult initial_witness(const TBox& t, const BoolQuery& q, const Signature& s) {
    if (!concept_satisfiable(top(), t))
        return NoWitness{};

    PurifiedQuery p = purify(t, q, s);
    ABox canonical = canonical_abox(p.tbox, p.sigma);

    if (p.was_pure) {
        if (entails(KnowledgeBase{p.tbox, canonical}, p.query))
            return canonical;
        return NoWitness{};
    }

    size_t m = p.markers.size();
    // Only individuals asserted to carry the i-th marker can answer the i-th
    // marker variable: the markers occur in T_p only negatively.
    std::vector<std::vector<IndividualName>> candidates(m);
    for (const auto& as : canonical.assertions) {
        if (!as.is_concept())
            continue;
        for (size_t i = 0; i < m; ++i)
            if (as.as_concept().concept_nm == p.markers[i])
                candidates[i].push_back(as.as_concept().individual);
    }
    for (const auto& c : candidates)
        if (c.empty())
            return NoWitness{};

    KnowledgeBase kb_p{p.tbox, canonical};
    std::vector<size_t> odo(m, 0);
    while (true) {
        std::vector<IndividualName> witnesses;
        std::map<Variable, IndividualName> binding;
        for (size_t i = 0; i < m; ++i) {
            witnesses.push_back(candidates[i][odo[i]]);
            binding.emplace(p.marker_vars[i], witnesses.back());
        }
        std::set<IndividualName> distinct(witnesses.begin(), witnesses.end());
        if (distinct.size() == m && entails(kb_p, p.query.substitute(binding))) {
            // Drop marker assertions on non-witness individuals, then check
            // the grounding still goes through on the pruned ABox.
            ABox pruned;
            for (const auto& as : canonical.assertions) {
                if (as.is_concept()) {
                    bool drop = false;
                    for (size_t i = 0; i < m; ++i)
                        if (as.as_concept().concept_nm == p.markers[i] &&
                            !(as.as_concept().individual == witnesses[i]))
                            drop = true;
                    if (drop)
                        continue;
                }
                pruned.assertions.insert(as);
            }
            if (entails(KnowledgeBase{p.tbox, pruned}, p.query.substitute(binding))) {
                ABox witness = depurify_abox(pruned, witnesses, p);
                if (kb_consistent(KnowledgeBase{t, witness}) &&
                    entails(KnowledgeBase{t, witness}, q))
                    return witness;
            }
        }

        size_t pos = 0;
        while (pos < odo.size()) {
            if (++odo[pos] < candidates[pos].size())
                break;
            odo[pos++] = 0;
        }
        if (pos == odo.size())
            break;
    }
    return NoWitness{};
}

std::optional<KbAlignSolution> cheapest_modification(
    const ABox& a, const Signature& sig, const std::vector<IndividualName>& individual_pool,
    const ABox& witness, const CostModel& cm, const std::function<bool(const ABox&)>& accept) {
    struct Item {
        ABoxOperation op;
        double cost;
    };
    std::vector<Item> items;
    for (const auto& as : a.assertions)
        items.push_back({ABoxOperation{ABoxOperation::Kind::Remove, as}, cm.remove_cost(as)});

    std::set<Assertion> candidates;
    std::vector<IndividualName> pool = individual_pool;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (ConceptName c : sig.concepts)
        for (IndividualName x : pool)
            candidates.insert(Assertion::concept(c, x));
    for (RoleName r : sig.roles)
        for (IndividualName x : pool)
            for (IndividualName y : pool)
                candidates.insert(Assertion::role(r, x, y));
    for (const auto& as : witness.assertions)
        candidates.insert(as);
    for (const auto& as : candidates)
        if (!a.assertions.count(as))
            items.push_back({ABoxOperation{ABoxOperation::Kind::Insert, as}, cm.insert_cost(as)});

    if (items.size() > 62)
        throw DeskScaleExceeded("modification search space exceeds 62 candidate operations");

    using Subset = std::vector<int>;
    struct Entry {
        double cost;
        Subset subset;
        bool operator>(const Entry& o) const {
            if (cost != o.cost)
                return cost > o.cost;
            return subset > o.subset;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    pq.push({0.0, {}});

    size_t pops = 0;
    while (!pq.empty()) {
        Entry e = pq.top();
        pq.pop();
        if (++pops > 500000)
            throw DeskScaleExceeded("modification search exceeded the exploration budget");

        ABox outcome = a;
        ABoxModification mod;
        for (int idx : e.subset) {
            mod.push_back(items[idx].op);
            if (items[idx].op.kind == ABoxOperation::Kind::Insert)
                outcome.assertions.insert(items[idx].op.assertion);
            else
                outcome.assertions.erase(items[idx].op.assertion);
        }
        if (accept(outcome))
            return KbAlignSolution{std::move(mod), e.cost, std::move(outcome)};

        int start = e.subset.empty() ? 0 : e.subset.back() + 1;
        for (int j = start; j < static_cast<int>(items.size()); ++j) {
            Subset next = e.subset;
            next.push_back(j);
            pq.push({e.cost + items[j].cost, std::move(next)});
        }
    }
    return std::nullopt;
}

std::optional<KbAlignSolution> kb_align(const KnowledgeBase& k, const BoolQuery& q,
                                        const CostModel& cm) {
    if (!q.is_boolean())
        throw UnsupportedQueryShape("KB alignment requires a Boolean query");

    Signature sig = signature_of(k);
    sig.unite(q.signature());

    WitnessResult w = initial_witness(k.tbox, q, sig);
    if (std::holds_alternative<NoWitness>(w))
        return std::nullopt;
    const ABox& witness = std::get<ABox>(w);

    std::vector<IndividualName> pool;
    for (IndividualName x : k.abox.individuals())
        pool.push_back(x);
    for (IndividualName x : q.individuals())
        pool.push_back(x);
    for (IndividualName x : witness.individuals())
        pool.push_back(x);

    auto accept = [&](const ABox& a2) {
        KnowledgeBase kb{k.tbox, a2};
        return kb_consistent(kb) && entails(kb, q);
    };
    return cheapest_modification(k.abox, sig, pool, witness, cm, accept);
}

}  // namespace tkba
