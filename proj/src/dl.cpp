#include "tkba/dl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace tkba {
namespace {

enum class NodeTag : uint8_t { Top, Name, Not, Or, Exists };

struct Node {
    NodeTag tag;
    uint32_t sym;   // concept name (Name) or role name (Exists)
    uint32_t lhs;   // Not / Or / Exists child
    uint32_t rhs;   // Or second child
};

using NodeKey = std::tuple<uint8_t, uint32_t, uint32_t, uint32_t>;

}  // namespace

class ConceptArena {
public:
    static ConceptArena& instance() {
        static ConceptArena arena;
        return arena;
    }

    Concept make(NodeTag tag, uint32_t sym, uint32_t lhs, uint32_t rhs) {
        NodeKey key{static_cast<uint8_t>(tag), sym, lhs, rhs};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(key);
        if (it != ids_.end())
            return Concept(it->second);
        uint32_t id = static_cast<uint32_t>(nodes_.size());
        nodes_.push_back(Node{tag, sym, lhs, rhs});
        ids_.emplace(key, id);
        return Concept(id);
    }

    Node get(Concept c) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (c.id() >= nodes_.size())
            throw std::out_of_range("unknown concept id");
        return nodes_[c.id()];
    }

    static Concept wrap(uint32_t id) { return Concept(id); }

private:
    ConceptArena() {
        // Slot 0 is TOP so a default-constructed Concept is valid.
        nodes_.push_back(Node{NodeTag::Top, 0, 0, 0});
        ids_.emplace(NodeKey{static_cast<uint8_t>(NodeTag::Top), 0, 0, 0}, 0);
    }

    mutable std::mutex mu_;
    std::vector<Node> nodes_;
    std::map<NodeKey, uint32_t> ids_;
};

namespace {

Concept make(NodeTag tag, uint32_t sym, uint32_t lhs, uint32_t rhs) {
    return ConceptArena::instance().make(tag, sym, lhs, rhs);
}

Node node_of(Concept c) { return ConceptArena::instance().get(c); }

Concept wrap(uint32_t id) { return ConceptArena::wrap(id); }

}  // namespace

Concept top() { return Concept(); }

Concept atom(ConceptName name) { return make(NodeTag::Name, name.id, 0, 0); }

Concept negation(Concept c) {
    Node n = node_of(c);
    if (n.tag == NodeTag::Not)
        return wrap(n.lhs);  // double negation eliminated on construction
    return make(NodeTag::Not, 0, c.id(), 0);
}

Concept disjunction(Concept a, Concept b) {
    return make(NodeTag::Or, 0, a.id(), b.id());
}

Concept bottom() { return negation(top()); }

Concept conjunction(Concept a, Concept b) {
    return negation(disjunction(negation(a), negation(b)));
}

Concept exists(RoleName role, Concept body) {
    return make(NodeTag::Exists, role.id, body.id(), 0);
}

Concept forall(RoleName role, Concept body) {
    return negation(exists(role, negation(body)));
}

Concept disjunction_of(const std::vector<Concept>& cs) {
    if (cs.empty())
        return bottom();
    Concept acc = cs.front();
    for (size_t i = 1; i < cs.size(); ++i)
        acc = disjunction(acc, cs[i]);
    return acc;
}

Concept conjunction_of(const std::vector<Concept>& cs) {
    if (cs.empty())
        return top();
    Concept acc = cs.front();
    for (size_t i = 1; i < cs.size(); ++i)
        acc = conjunction(acc, cs[i]);
    return acc;
}

ConceptView view(Concept c) {
    Node n = node_of(c);
    ConceptView v{ConceptKind::Top};
    switch (n.tag) {
        case NodeTag::Top:
            v.kind = ConceptKind::Top;
            return v;
        case NodeTag::Name:
            v.kind = ConceptKind::Pos;
            v.name = ConceptName{n.sym};
            return v;
        case NodeTag::Or:
            v.kind = ConceptKind::Or;
            v.a = wrap(n.lhs);
            v.b = wrap(n.rhs);
            return v;
        case NodeTag::Exists:
            v.kind = ConceptKind::Exists;
            v.role = RoleName{n.sym};
            v.a = wrap(n.lhs);
            return v;
        case NodeTag::Not: {
            Node inner = node_of(wrap(n.lhs));
            switch (inner.tag) {
                case NodeTag::Top:
                    v.kind = ConceptKind::Bot;
                    return v;
                case NodeTag::Name:
                    v.kind = ConceptKind::Neg;
                    v.name = ConceptName{inner.sym};
                    return v;
                case NodeTag::Or:
                    v.kind = ConceptKind::And;
                    v.a = negation(wrap(inner.lhs));
                    v.b = negation(wrap(inner.rhs));
                    return v;
                case NodeTag::Exists:
                    v.kind = ConceptKind::Forall;
                    v.role = RoleName{inner.sym};
                    v.a = negation(wrap(inner.lhs));
                    return v;
                case NodeTag::Not:
                    // cannot be stored: negation() strips double negations
                    throw std::logic_error("double negation in arena");
            }
            break;
        }
    }
    throw std::logic_error("corrupt concept node");
}

Concept nnf(Concept c) {
    ConceptView v = view(c);
    switch (v.kind) {
        case ConceptKind::Top:
            return top();
        case ConceptKind::Bot:
            return bottom();
        case ConceptKind::Pos:
            return atom(v.name);
        case ConceptKind::Neg:
            return negation(atom(v.name));
        case ConceptKind::And:
            return conjunction(nnf(v.a), nnf(v.b));
        case ConceptKind::Or:
            return disjunction(nnf(v.a), nnf(v.b));
        case ConceptKind::Exists:
            return exists(v.role, nnf(v.a));
        case ConceptKind::Forall:
            return forall(v.role, nnf(v.a));
    }
    throw std::logic_error("unreachable");
}

bool operator==(const Assertion& a, const Assertion& b) {
    if (a.value.index() != b.value.index())
        return false;
    if (a.is_concept())
        return a.as_concept().key() == b.as_concept().key();
    return a.as_role().key() == b.as_role().key();
}

bool operator<(const Assertion& a, const Assertion& b) {
    if (a.value.index() != b.value.index())
        return a.value.index() < b.value.index();
    if (a.is_concept())
        return a.as_concept().key() < b.as_concept().key();
    return a.as_role().key() < b.as_role().key();
}

std::set<IndividualName> ABox::individuals() const {
    std::set<IndividualName> out;
    for (const auto& a : assertions) {
        if (a.is_concept()) {
            out.insert(a.as_concept().individual);
        } else {
            out.insert(a.as_role().subject);
            out.insert(a.as_role().object);
        }
    }
    return out;
}

Signature& Signature::unite(const Signature& other) {
    concepts.insert(other.concepts.begin(), other.concepts.end());
    roles.insert(other.roles.begin(), other.roles.end());
    return *this;
}

bool Signature::contains(const Signature& other) const {
    return std::includes(concepts.begin(), concepts.end(), other.concepts.begin(),
                         other.concepts.end()) &&
           std::includes(roles.begin(), roles.end(), other.roles.begin(), other.roles.end());
}

Signature signature_of(Concept c) {
    Signature s;
    ConceptView v = view(c);
    switch (v.kind) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
            break;
        case ConceptKind::Pos:
        case ConceptKind::Neg:
            s.concepts.insert(v.name);
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            s.unite(signature_of(v.a)).unite(signature_of(v.b));
            break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            s.roles.insert(v.role);
            s.unite(signature_of(v.a));
            break;
    }
    return s;
}

Signature signature_of(const TBox& t) {
    Signature s;
    for (const auto& g : t.gcis)
        s.unite(signature_of(g.lhs)).unite(signature_of(g.rhs));
    return s;
}

Signature signature_of(const ABox& a) {
    Signature s;
    for (const auto& as : a.assertions) {
        if (as.is_concept())
            s.concepts.insert(as.as_concept().concept_nm);
        else
            s.roles.insert(as.as_role().role);
    }
    return s;
}

Signature signature_of(const KnowledgeBase& k) {
    return signature_of(k.tbox).unite(signature_of(k.abox));
}

}  // namespace tkba
