#include "tkba/automata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

#include "tkba/errors.hpp"

namespace tkba {
namespace {

// ---------------------------------------------------------------------------
// LTL -> generalized Buchi -> Buchi.

struct ClosureInfo {
    std::vector<LtlFormula> subs;  // post-order, children before parents
    std::map<uint32_t, int> index;

    int at(LtlFormula f) const { return index.at(f.id()); }
};

ClosureInfo closure_of(LtlFormula f) {
    ClosureInfo ci;
    std::function<void(LtlFormula)> collect = [&](LtlFormula g) {
        if (ci.index.count(g.id()))
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
        ci.index.emplace(g.id(), static_cast<int>(ci.subs.size()));
        ci.subs.push_back(g);
    };
    collect(f);
    return ci;
}

// States of the NBA before pruning: (elementary set, degeneralization
// counter). Elementary sets are truth assignments over the closure that
// respect the Boolean connectives.
struct Degeneralized {
    std::vector<std::pair<uint32_t, int>> states;
};

}  // namespace

NBA ltl_to_nba(LtlFormula f, int num_props) {
    for (int p : ltl_props(f))
        if (p >= num_props)
            throw std::invalid_argument("formula proposition outside the declared alphabet");

    ClosureInfo ci = closure_of(f);
    int n = static_cast<int>(ci.subs.size());
    if (n > 22)
        throw DeskScaleExceeded("LTL formula too large for the closure construction");

    auto holds = [&](uint32_t set, LtlFormula g) { return (set >> ci.at(g)) & 1; };

    std::vector<uint32_t> elementary;
    for (uint32_t set = 0; set < (1u << n); ++set) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            LtlView v = ltl_view(ci.subs[i]);
            bool b = (set >> i) & 1;
            if (v.kind == LtlKind::Not)
                ok = b == !holds(set, v.a);
            else if (v.kind == LtlKind::Or)
                ok = b == (holds(set, v.a) || holds(set, v.b));
        }
        if (ok)
            elementary.push_back(set);
    }

    std::vector<LtlFormula> untils;
    for (LtlFormula g : ci.subs)
        if (ltl_view(g).kind == LtlKind::Until)
            untils.push_back(g);
    int k = std::max<size_t>(1, untils.size());

    auto letter_of = [&](uint32_t set) {
        uint32_t letter = 0;
        for (int i = 0; i < n; ++i) {
            LtlView v = ltl_view(ci.subs[i]);
            if (v.kind == LtlKind::Prop && ((set >> i) & 1))
                letter |= 1u << v.prop;
        }
        return letter;
    };

    // F_u per until u: sets where u is not promised or b already holds; with
    // no untils a single all-accepting set.
    auto in_accept_set = [&](uint32_t set, int u_idx) {
        if (untils.empty())
            return true;
        LtlView v = ltl_view(untils[u_idx]);
        return !holds(set, untils[u_idx]) || holds(set, v.b);
    };

    auto gnba_step_ok = [&](uint32_t from, uint32_t to) {
        for (LtlFormula g : ci.subs) {
            LtlView v = ltl_view(g);
            if (v.kind == LtlKind::Next) {
                if (holds(from, g) != holds(to, v.a))
                    return false;
            } else if (v.kind == LtlKind::Until) {
                bool expected = holds(from, v.b) || (holds(from, v.a) && holds(to, g));
                if (holds(from, g) != expected)
                    return false;
            }
        }
        return true;
    };

    // Degeneralized product with the counter trick.
    std::map<std::pair<uint32_t, int>, int> state_ids;
    std::vector<std::pair<uint32_t, int>> states;
    for (uint32_t set : elementary)
        for (int c = 0; c < k; ++c) {
            state_ids.emplace(std::pair(set, c), static_cast<int>(states.size()));
            states.emplace_back(set, c);
        }

    NBA out;
    out.num_props = num_props;
    out.num_states = static_cast<int>(states.size());
    out.delta.assign(out.num_states, std::vector<std::vector<int>>(1 << num_props));
    for (int s = 0; s < out.num_states; ++s) {
        auto [set, c] = states[s];
        uint32_t letter = letter_of(set);
        int next_c = in_accept_set(set, c) ? (c + 1) % k : c;
        for (uint32_t to : elementary) {
            if (!gnba_step_ok(set, to))
                continue;
            out.delta[s][letter].push_back(state_ids.at({to, next_c}));
        }
    }
    for (uint32_t set : elementary)
        if (holds(set, f))
            out.initial.insert(state_ids.at({set, 0}));
    for (int s = 0; s < out.num_states; ++s) {
        auto [set, c] = states[s];
        if (c == 0 && in_accept_set(set, 0))
            out.accepting.insert(s);
    }

    // Prune to states reachable from the initial set that can still reach an
    // accepting cycle; keeps Safra trees small.
    std::vector<std::vector<int>> succ(out.num_states);
    for (int s = 0; s < out.num_states; ++s)
        for (const auto& v : out.delta[s])
            for (int t : v)
                succ[s].push_back(t);

    std::vector<bool> reachable(out.num_states, false);
    {
        std::queue<int> q;
        for (int s : out.initial) {
            reachable[s] = true;
            q.push(s);
        }
        while (!q.empty()) {
            int s = q.front();
            q.pop();
            for (int t : succ[s])
                if (!reachable[t]) {
                    reachable[t] = true;
                    q.push(t);
                }
        }
    }

    // Tarjan SCCs over the reachable part.
    std::vector<int> comp(out.num_states, -1), low(out.num_states), disc(out.num_states, -1);
    std::vector<int> stack;
    std::vector<bool> on_stack(out.num_states, false);
    int timer = 0, comp_count = 0;
    std::function<void(int)> tarjan = [&](int u) {
        disc[u] = low[u] = timer++;
        stack.push_back(u);
        on_stack[u] = true;
        for (int v : succ[u]) {
            if (!reachable[v])
                continue;
            if (disc[v] == -1) {
                tarjan(v);
                low[u] = std::min(low[u], low[v]);
            } else if (on_stack[v]) {
                low[u] = std::min(low[u], disc[v]);
            }
        }
        if (low[u] == disc[u]) {
            while (true) {
                int v = stack.back();
                stack.pop_back();
                on_stack[v] = false;
                comp[v] = comp_count;
                if (v == u)
                    break;
            }
            ++comp_count;
        }
    };
    for (int s = 0; s < out.num_states; ++s)
        if (reachable[s] && disc[s] == -1)
            tarjan(s);

    std::vector<bool> comp_has_cycle(comp_count, false), comp_has_accepting(comp_count, false);
    for (int s = 0; s < out.num_states; ++s) {
        if (!reachable[s])
            continue;
        for (int t : succ[s]) {
            if (!reachable[t])
                continue;
            if (comp[s] == comp[t])
                comp_has_cycle[comp[s]] = true;
        }
        if (out.accepting.count(s))
            comp_has_accepting[comp[s]] = true;
    }
    std::vector<bool> live(out.num_states, false);
    {
        // live = can reach a good SCC
        std::vector<bool> good_state(out.num_states, false);
        for (int s = 0; s < out.num_states; ++s)
            if (reachable[s] && comp_has_cycle[comp[s]] && comp_has_accepting[comp[s]] &&
                out.accepting.count(s))
                good_state[s] = true;
        // backward closure over reachable states
        bool changed = true;
        for (int s = 0; s < out.num_states; ++s)
            live[s] = good_state[s];
        while (changed) {
            changed = false;
            for (int s = 0; s < out.num_states; ++s) {
                if (!reachable[s] || live[s])
                    continue;
                for (int t : succ[s])
                    if (live[t]) {
                        live[s] = true;
                        changed = true;
                        break;
                    }
            }
        }
    }

    std::vector<int> remap(out.num_states, -1);
    int kept = 0;
    for (int s = 0; s < out.num_states; ++s)
        if (reachable[s] && live[s])
            remap[s] = kept++;

    NBA pruned;
    pruned.num_props = num_props;
    pruned.num_states = kept;
    pruned.delta.assign(kept, std::vector<std::vector<int>>(1 << num_props));
    for (int s = 0; s < out.num_states; ++s) {
        if (remap[s] == -1)
            continue;
        for (int letter = 0; letter < out.num_letters(); ++letter)
            for (int t : out.delta[s][letter])
                if (remap[t] != -1)
                    pruned.delta[remap[s]][letter].push_back(remap[t]);
        if (out.accepting.count(s))
            pruned.accepting.insert(remap[s]);
    }
    for (int s : out.initial)
        if (remap[s] != -1)
            pruned.initial.insert(remap[s]);
    return pruned;
}

// ---------------------------------------------------------------------------
// Safra trees.

namespace {

struct SafraNode {
    int name;
    std::vector<int> label;  // sorted NBA states
    bool marked = false;
    std::vector<SafraNode> children;

    friend bool operator==(const SafraNode& a, const SafraNode& b) {
        return a.name == b.name && a.label == b.label && a.marked == b.marked &&
               a.children == b.children;
    }
    friend bool operator<(const SafraNode& a, const SafraNode& b) {
        if (a.name != b.name)
            return a.name < b.name;
        if (a.label != b.label)
            return a.label < b.label;
        if (a.marked != b.marked)
            return a.marked < b.marked;
        return a.children < b.children;
    }
};

struct SafraTree {
    bool empty = true;      // no run alive
    SafraNode root;         // valid when !empty

    friend bool operator==(const SafraTree& a, const SafraTree& b) {
        if (a.empty != b.empty)
            return false;
        return a.empty || a.root == b.root;
    }
    friend bool operator<(const SafraTree& a, const SafraTree& b) {
        if (a.empty != b.empty)
            return a.empty < b.empty;
        if (a.empty)
            return false;
        return a.root < b.root;
    }
};

void collect_names(const SafraNode& n, std::set<int>& names) {
    names.insert(n.name);
    for (const auto& c : n.children)
        collect_names(c, names);
}

void unmark_all(SafraNode& n) {
    n.marked = false;
    for (auto& c : n.children)
        unmark_all(c);
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::set<int>& b) {
    std::vector<int> out;
    for (int x : a)
        if (b.count(x))
            out.push_back(x);
    return out;
}

SafraTree safra_step(const SafraTree& tree, const NBA& nba, int letter) {
    if (tree.empty)
        return tree;
    SafraTree out = tree;
    unmark_all(out.root);

    // Branch: every node with accepting states in its label spawns a
    // youngest child holding exactly those, named with the smallest unused
    // name. Children created in this step do not branch themselves.
    std::set<int> used;
    collect_names(out.root, used);
    auto fresh_name = [&]() {
        int n = 1;
        while (used.count(n))
            ++n;
        used.insert(n);
        return n;
    };
    std::function<void(SafraNode&)> branch = [&](SafraNode& node) {
        size_t existing = node.children.size();
        for (size_t i = 0; i < existing; ++i)
            branch(node.children[i]);
        std::vector<int> acc = intersect_sorted(node.label, nba.accepting);
        if (!acc.empty()) {
            SafraNode child;
            child.name = fresh_name();
            child.label = std::move(acc);
            node.children.push_back(std::move(child));
        }
    };
    branch(out.root);

    // Powerset step on every label.
    std::function<void(SafraNode&)> powerset = [&](SafraNode& node) {
        std::set<int> next;
        for (int q : node.label)
            for (int t : nba.delta[q][letter])
                next.insert(t);
        node.label.assign(next.begin(), next.end());
        for (auto& c : node.children)
            powerset(c);
    };
    powerset(out.root);

    // Horizontal merge: a state is kept only in the oldest sibling subtree
    // containing it.
    std::function<void(SafraNode&, const std::set<int>&)> strip =
        [&](SafraNode& node, const std::set<int>& forbidden) {
            std::vector<int> keep;
            for (int q : node.label)
                if (!forbidden.count(q))
                    keep.push_back(q);
            node.label = std::move(keep);
            for (auto& c : node.children)
                strip(c, forbidden);
        };
    std::function<void(SafraNode&)> horizontal = [&](SafraNode& node) {
        std::set<int> claimed;
        for (auto& c : node.children) {
            strip(c, claimed);
            claimed.insert(c.label.begin(), c.label.end());
        }
        for (auto& c : node.children)
            horizontal(c);
    };
    horizontal(out.root);

    // Remove nodes with empty labels.
    std::function<void(SafraNode&)> drop_empty = [&](SafraNode& node) {
        std::vector<SafraNode> keep;
        for (auto& c : node.children) {
            if (!c.label.empty()) {
                drop_empty(c);
                keep.push_back(std::move(c));
            }
        }
        node.children = std::move(keep);
    };
    if (out.root.label.empty()) {
        out.empty = true;
        out.root = SafraNode{};
        return out;
    }
    drop_empty(out.root);

    // Vertical merge: a node whose children exactly cover it flashes green
    // and loses its descendants.
    std::function<void(SafraNode&)> vertical = [&](SafraNode& node) {
        std::set<int> union_children;
        for (const auto& c : node.children)
            union_children.insert(c.label.begin(), c.label.end());
        if (!node.children.empty() &&
            std::vector<int>(union_children.begin(), union_children.end()) == node.label) {
            node.children.clear();
            node.marked = true;
            return;
        }
        for (auto& c : node.children)
            vertical(c);
    };
    vertical(out.root);
    return out;
}

struct RabinAutomaton {
    int num_props = 0;
    int num_states = 0;
    int initial = 0;
    std::vector<std::vector<int>> delta;
    // Per state: names present, names marked.
    std::vector<std::set<int>> present;
    std::vector<std::set<int>> marked;
};

RabinAutomaton safra_determinize(const NBA& nba) {
    SafraTree init;
    if (!nba.initial.empty()) {
        init.empty = false;
        init.root.name = 1;
        init.root.label.assign(nba.initial.begin(), nba.initial.end());
    }

    std::map<SafraTree, int> ids;
    std::vector<SafraTree> trees;
    auto intern = [&](const SafraTree& t) {
        auto it = ids.find(t);
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(trees.size());
        ids.emplace(t, id);
        trees.push_back(t);
        return id;
    };

    RabinAutomaton out;
    out.num_props = nba.num_props;
    intern(init);
    for (size_t s = 0; s < trees.size(); ++s) {
        if (trees.size() > 60000)
            throw DeskScaleExceeded("Safra construction exceeded the state budget");
        out.delta.emplace_back(nba.num_letters());
        SafraTree current = trees[s];  // copy: trees may reallocate
        for (int letter = 0; letter < nba.num_letters(); ++letter)
            out.delta[s][letter] = intern(safra_step(current, nba, letter));
    }
    out.num_states = static_cast<int>(trees.size());
    out.initial = 0;
    out.present.resize(out.num_states);
    out.marked.resize(out.num_states);
    for (int s = 0; s < out.num_states; ++s) {
        if (trees[s].empty)
            continue;
        std::set<int> names;
        collect_names(trees[s].root, names);
        out.present[s] = names;
        std::function<void(const SafraNode&)> walk = [&](const SafraNode& n) {
            if (n.marked)
                out.marked[s].insert(n.name);
            for (const auto& c : n.children)
                walk(c);
        };
        walk(trees[s].root);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Index appearance record: Rabin pairs to a min-even parity condition.
//
// Pairs live in a record; a pair hit in its E-set moves to the back. With
// that discipline the pairs hit infinitely often drift behind the stable
// ones, and the transition color compares the front-most E-hit against the
// front-most F-hit (E wins ties), odd for E, even for F.

DPA iar_parity(const RabinAutomaton& ra) {
    // Pairs: names that are ever marked (F nonempty); E_n = name absent.
    std::set<int> pair_names;
    for (int s = 0; s < ra.num_states; ++s)
        for (int n : ra.marked[s])
            pair_names.insert(n);
    std::vector<int> pairs(pair_names.begin(), pair_names.end());
    int r = static_cast<int>(pairs.size());
    int neutral = 2 * r + 1;

    struct IarState {
        int rabin;
        std::vector<int> perm;  // pair indices, front first
        int color;
        auto key() const { return std::tuple(rabin, perm, color); }
    };

    IarState init;
    init.rabin = ra.initial;
    init.perm.resize(r);
    for (int i = 0; i < r; ++i)
        init.perm[i] = i;
    init.color = neutral;

    std::map<std::tuple<int, std::vector<int>, int>, int> ids;
    std::vector<IarState> states;
    auto intern = [&](const IarState& s) {
        auto it = ids.find(s.key());
        if (it != ids.end())
            return it->second;
        int id = static_cast<int>(states.size());
        ids.emplace(s.key(), id);
        states.push_back(s);
        return id;
    };

    DPA out;
    out.num_props = ra.num_props;
    intern(init);
    for (size_t s = 0; s < states.size(); ++s) {
        if (states.size() > 200000)
            throw DeskScaleExceeded("IAR construction exceeded the state budget");
        out.delta.emplace_back(1 << ra.num_props);
        IarState cur = states[s];
        for (int letter = 0; letter < (1 << ra.num_props); ++letter) {
            int q2 = ra.delta[cur.rabin][letter];
            int p_e = r + 1, p_f = r + 1;
            std::vector<bool> e_hit(r, false);
            for (int pos = 0; pos < r; ++pos) {
                int name = pairs[cur.perm[pos]];
                bool eh = !ra.present[q2].count(name);
                bool fh = ra.marked[q2].count(name) > 0;
                if (eh) {
                    e_hit[cur.perm[pos]] = true;
                    p_e = std::min(p_e, pos + 1);
                }
                if (fh)
                    p_f = std::min(p_f, pos + 1);
            }
            int color;
            if (p_e > r && p_f > r)
                color = neutral;
            else if (p_e <= p_f)
                color = 2 * p_e - 1;
            else
                color = 2 * p_f;

            IarState next;
            next.rabin = q2;
            for (int idx : cur.perm)
                if (!e_hit[idx])
                    next.perm.push_back(idx);
            for (int idx : cur.perm)
                if (e_hit[idx])
                    next.perm.push_back(idx);
            next.color = color;
            out.delta[s][letter] = intern(next);
        }
    }
    out.num_states = static_cast<int>(states.size());
    out.initial = 0;
    out.color.resize(out.num_states);
    for (int s = 0; s < out.num_states; ++s)
        out.color[s] = states[s].color;
    return out;
}

}  // namespace

DPA nba_to_dpa(const NBA& n) { return iar_parity(safra_determinize(n)); }

DPA ltl_to_dpa(LtlFormula f, int num_props) { return nba_to_dpa(ltl_to_nba(f, num_props)); }

bool nba_accepts_lasso(const NBA& n, const LassoWord& w) {
    if (w.loop.empty())
        throw std::invalid_argument("lasso loop must be nonempty");
    size_t p = w.prefix.size();
    size_t total = p + w.loop.size();
    auto letter = [&](size_t pos) {
        uint32_t l = pos < p ? w.prefix[pos] : w.loop[pos - p];
        if (l >= static_cast<uint32_t>(n.num_letters()))
            throw UnknownLetter("lasso letter outside the automaton alphabet");
        return l;
    };
    auto next_pos = [&](size_t pos) { return pos + 1 < total ? pos + 1 : p; };

    // Product of NBA states with lasso positions; accepted iff a cycle
    // through an accepting product node is reachable from an initial node.
    int m = n.num_states * static_cast<int>(total);
    if (m == 0)
        return false;
    auto node = [&](int q, size_t pos) { return q * static_cast<int>(total) + static_cast<int>(pos); };

    std::vector<bool> reach(m, false);
    std::queue<int> bfs;
    for (int q : n.initial) {
        reach[node(q, 0)] = true;
        bfs.push(node(q, 0));
    }
    auto succs = [&](int v) {
        int q = v / static_cast<int>(total);
        size_t pos = static_cast<size_t>(v % static_cast<int>(total));
        std::vector<int> out;
        for (int t : n.delta[q][letter(pos)])
            out.push_back(node(t, next_pos(pos)));
        return out;
    };
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int t : succs(v))
            if (!reach[t]) {
                reach[t] = true;
                bfs.push(t);
            }
    }

    // A reachable accepting node lying on a cycle: search from each.
    for (int q : n.accepting) {
        for (size_t pos = 0; pos < total; ++pos) {
            int v = node(q, pos);
            if (!reach[v])
                continue;
            std::vector<bool> seen(m, false);
            std::queue<int> q2;
            for (int t : succs(v))
                if (!seen[t]) {
                    seen[t] = true;
                    q2.push(t);
                }
            bool cycles = false;
            while (!q2.empty() && !cycles) {
                int u = q2.front();
                q2.pop();
                if (u == v) {
                    cycles = true;
                    break;
                }
                for (int t : succs(u))
                    if (!seen[t]) {
                        seen[t] = true;
                        q2.push(t);
                    }
            }
            if (cycles)
                return true;
        }
    }
    return false;
}

bool dpa_accepts_lasso(const DPA& p, const LassoWord& w) {
    if (w.loop.empty())
        throw std::invalid_argument("lasso loop must be nonempty");
    auto check_letter = [&](uint32_t l) {
        if (l >= static_cast<uint32_t>(p.num_letters()))
            throw UnknownLetter("lasso letter outside the automaton alphabet");
        return l;
    };

    int state = p.initial;
    for (uint32_t l : w.prefix)
        state = p.delta[state][check_letter(l)];

    // Iterate the loop until the state at loop entry repeats; the minimum
    // color on that cycle of passes decides.
    std::map<int, int> entry_pass;
    std::vector<int> entry_states;
    std::vector<int> pass_min_color;
    while (!entry_pass.count(state)) {
        entry_pass[state] = static_cast<int>(entry_states.size());
        entry_states.push_back(state);
        int min_color = p.color[state];
        for (uint32_t l : w.loop) {
            state = p.delta[state][check_letter(l)];
            min_color = std::min(min_color, p.color[state]);
        }
        pass_min_color.push_back(min_color);
    }
    int first = entry_pass[state];
    int min_color = pass_min_color[first];
    for (size_t i = first; i < pass_min_color.size(); ++i)
        min_color = std::min(min_color, pass_min_color[i]);
    return min_color % 2 == 0;
}

std::set<int> dpa_accepting_set(const DPA& p) {
    //  q is accepting iff it reaches (in the full graph) a cycle lying in
    //  {color >= c} through a color-c state, for some even c.
    std::set<int> colors(p.color.begin(), p.color.end());
    std::vector<bool> good(p.num_states, false);

    for (int c : colors) {
        if (c % 2 != 0)
            continue;
        // SCCs of the subgraph restricted to states with color >= c.
        std::vector<int> comp(p.num_states, -1), low(p.num_states), disc(p.num_states, -1);
        std::vector<int> stack;
        std::vector<bool> on_stack(p.num_states, false);
        int timer = 0, comp_count = 0;
        auto in_sub = [&](int s) { return p.color[s] >= c; };
        std::function<void(int)> tarjan = [&](int u) {
            disc[u] = low[u] = timer++;
            stack.push_back(u);
            on_stack[u] = true;
            for (int letter = 0; letter < p.num_letters(); ++letter) {
                int v = p.delta[u][letter];
                if (!in_sub(v))
                    continue;
                if (disc[v] == -1) {
                    tarjan(v);
                    low[u] = std::min(low[u], low[v]);
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], disc[v]);
                }
            }
            if (low[u] == disc[u]) {
                while (true) {
                    int v = stack.back();
                    stack.pop_back();
                    on_stack[v] = false;
                    comp[v] = comp_count;
                    if (v == u)
                        break;
                }
                ++comp_count;
            }
        };
        for (int s = 0; s < p.num_states; ++s)
            if (in_sub(s) && disc[s] == -1)
                tarjan(s);

        std::vector<bool> has_cycle(comp_count, false), has_c(comp_count, false);
        for (int s = 0; s < p.num_states; ++s) {
            if (!in_sub(s))
                continue;
            for (int letter = 0; letter < p.num_letters(); ++letter) {
                int t = p.delta[s][letter];
                if (in_sub(t) && comp[s] == comp[t])
                    has_cycle[comp[s]] = true;
            }
            if (p.color[s] == c)
                has_c[comp[s]] = true;
        }
        for (int s = 0; s < p.num_states; ++s)
            if (in_sub(s) && has_cycle[comp[s]] && has_c[comp[s]])
                good[s] = true;
    }

    // Backward closure over the full graph.
    std::vector<std::vector<int>> preds(p.num_states);
    for (int s = 0; s < p.num_states; ++s)
        for (int letter = 0; letter < p.num_letters(); ++letter)
            preds[p.delta[s][letter]].push_back(s);
    std::queue<int> q;
    std::vector<bool> acc(p.num_states, false);
    for (int s = 0; s < p.num_states; ++s)
        if (good[s]) {
            acc[s] = true;
            q.push(s);
        }
    while (!q.empty()) {
        int s = q.front();
        q.pop();
        for (int t : preds[s])
            if (!acc[t]) {
                acc[t] = true;
                q.push(t);
            }
    }
    std::set<int> out;
    for (int s = 0; s < p.num_states; ++s)
        if (acc[s])
            out.insert(s);
    return out;
}

DPA reduct_with_sink(const DPA& p, const std::vector<bool>& letter_allowed) {
    if (static_cast<int>(letter_allowed.size()) != p.num_letters())
        throw std::invalid_argument("letter_allowed size must match the alphabet");
    DPA out;
    out.num_props = p.num_props;
    out.num_states = p.num_states + 1;
    out.initial = p.initial;
    int sink = p.num_states;
    out.delta.assign(out.num_states, std::vector<int>(p.num_letters(), sink));
    for (int s = 0; s < p.num_states; ++s)
        for (int letter = 0; letter < p.num_letters(); ++letter)
            out.delta[s][letter] = letter_allowed[letter] ? p.delta[s][letter] : sink;
    out.color.resize(out.num_states);
    for (int s = 0; s < p.num_states; ++s)
        out.color[s] = p.color[s] + 1;
    out.color[sink] = 1;
    return out;
}

}  // namespace tkba
