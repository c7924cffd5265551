#include "tkba/ltl.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace tkba {
namespace {

struct LtlNode {
    LtlKind kind;
    int prop;
    uint32_t a, b;
};

using LtlKey = std::tuple<uint8_t, int, uint32_t, uint32_t>;

}  // namespace

class LtlArena {
public:
    static LtlArena& instance() {
        static LtlArena arena;
        return arena;
    }

    LtlFormula make(LtlKind kind, int prop, uint32_t a, uint32_t b) {
        LtlKey key{static_cast<uint8_t>(kind), prop, a, b};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(key);
        if (it != ids_.end())
            return LtlFormula(it->second);
        uint32_t id = static_cast<uint32_t>(nodes_.size());
        nodes_.push_back(LtlNode{kind, prop, a, b});
        ids_.emplace(key, id);
        return LtlFormula(id);
    }

    LtlNode get(LtlFormula f) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (f.id() >= nodes_.size())
            throw std::out_of_range("unknown ltl formula id");
        return nodes_[f.id()];
    }

    static LtlFormula wrap(uint32_t id) { return LtlFormula(id); }

private:
    LtlArena() {
        nodes_.push_back(LtlNode{LtlKind::Prop, 0, 0, 0});
        ids_.emplace(LtlKey{static_cast<uint8_t>(LtlKind::Prop), 0, 0, 0}, 0);
    }

    mutable std::mutex mu_;
    std::vector<LtlNode> nodes_;
    std::map<LtlKey, uint32_t> ids_;
};

namespace {

LtlFormula make(LtlKind kind, int prop, uint32_t a, uint32_t b) {
    return LtlArena::instance().make(kind, prop, a, b);
}

LtlNode node_of(LtlFormula f) { return LtlArena::instance().get(f); }

}  // namespace

LtlFormula ltl_prop(int prop) {
    if (prop < 0)
        throw std::invalid_argument("proposition index must be nonnegative");
    return make(LtlKind::Prop, prop, 0, 0);
}

LtlFormula ltl_not(LtlFormula f) {
    LtlNode n = node_of(f);
    if (n.kind == LtlKind::Not)
        return LtlArena::wrap(n.a);
    return make(LtlKind::Not, -1, f.id(), 0);
}

LtlFormula ltl_or(LtlFormula a, LtlFormula b) { return make(LtlKind::Or, -1, a.id(), b.id()); }

LtlFormula ltl_and(LtlFormula a, LtlFormula b) {
    return ltl_not(ltl_or(ltl_not(a), ltl_not(b)));
}

LtlFormula ltl_next(LtlFormula f) { return make(LtlKind::Next, -1, f.id(), 0); }

LtlFormula ltl_until(LtlFormula a, LtlFormula b) {
    return make(LtlKind::Until, -1, a.id(), b.id());
}

LtlFormula ltl_eventually(LtlFormula f) { return ltl_until(ltl_not(f), f); }

LtlFormula ltl_always(LtlFormula f) { return ltl_not(ltl_until(f, ltl_not(f))); }

LtlFormula ltl_implies(LtlFormula a, LtlFormula b) { return ltl_or(ltl_not(a), b); }

LtlView ltl_view(LtlFormula f) {
    LtlNode n = node_of(f);
    LtlView v{n.kind};
    switch (n.kind) {
        case LtlKind::Prop:
            v.prop = n.prop;
            break;
        case LtlKind::Not:
        case LtlKind::Next:
            v.a = LtlArena::wrap(n.a);
            break;
        case LtlKind::Or:
        case LtlKind::Until:
            v.a = LtlArena::wrap(n.a);
            v.b = LtlArena::wrap(n.b);
            break;
    }
    return v;
}

std::set<int> ltl_props(LtlFormula f) {
    std::set<int> out;
    std::function<void(LtlFormula)> walk = [&](LtlFormula g) {
        LtlView v = ltl_view(g);
        switch (v.kind) {
            case LtlKind::Prop:
                out.insert(v.prop);
                break;
            case LtlKind::Not:
            case LtlKind::Next:
                walk(v.a);
                break;
            case LtlKind::Or:
            case LtlKind::Until:
                walk(v.a);
                walk(v.b);
                break;
        }
    };
    walk(f);
    return out;
}

bool eval_ltl_lasso(const LassoWord& w, LtlFormula f) {
    if (w.loop.empty())
        throw std::invalid_argument("lasso loop must be nonempty");
    size_t p = w.prefix.size();
    size_t n = p + w.loop.size();
    auto letter = [&](size_t pos) { return pos < p ? w.prefix[pos] : w.loop[pos - p]; };
    auto next_pos = [&](size_t pos) { return pos + 1 < n ? pos + 1 : p; };

    // Subformulas in a deterministic order; truth tables per position.
    std::vector<LtlFormula> subs;
    std::function<void(LtlFormula)> collect = [&](LtlFormula g) {
        for (LtlFormula s : subs)
            if (s == g)
                return;
        LtlView v = ltl_view(g);
        switch (v.kind) {
            case LtlKind::Prop:
                break;
            case LtlKind::Not:
            case LtlKind::Next:
                collect(v.a);
                break;
            case LtlKind::Or:
            case LtlKind::Until:
                collect(v.a);
                collect(v.b);
                break;
        }
        subs.push_back(g);
    };
    collect(f);

    std::map<uint32_t, size_t> index;
    for (size_t i = 0; i < subs.size(); ++i)
        index[subs[i].id()] = i;

    // val[i][pos], filled bottom-up (subs is in post-order). Until is the
    // least solution of x = b or (a and X x), computed per formula by
    // iterating from false; the other connectives read finished children.
    std::vector<std::vector<bool>> val(subs.size(), std::vector<bool>(n, false));
    for (size_t i = 0; i < subs.size(); ++i) {
        LtlView v = ltl_view(subs[i]);
        switch (v.kind) {
            case LtlKind::Prop:
                for (size_t pos = 0; pos < n; ++pos)
                    val[i][pos] = (letter(pos) >> v.prop) & 1;
                break;
            case LtlKind::Not:
                for (size_t pos = 0; pos < n; ++pos)
                    val[i][pos] = !val[index[v.a.id()]][pos];
                break;
            case LtlKind::Or:
                for (size_t pos = 0; pos < n; ++pos)
                    val[i][pos] = val[index[v.a.id()]][pos] || val[index[v.b.id()]][pos];
                break;
            case LtlKind::Next:
                for (size_t pos = 0; pos < n; ++pos)
                    val[i][pos] = val[index[v.a.id()]][next_pos(pos)];
                break;
            case LtlKind::Until: {
                const auto& av = val[index[v.a.id()]];
                const auto& bv = val[index[v.b.id()]];
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (size_t pos = 0; pos < n; ++pos) {
                        bool nv = bv[pos] || (av[pos] && val[i][next_pos(pos)]);
                        if (nv && !val[i][pos]) {
                            val[i][pos] = true;
                            changed = true;
                        }
                    }
                }
                break;
            }
        }
    }
    return val[index[f.id()]][0];
}

}  // namespace tkba
