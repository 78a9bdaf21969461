#include "mplsym/polygon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>

namespace mplsym {

const RatFunc& Polygon::side(int k) const {
    return k == sides() ? root : decorations.at(k - 1);
}

Polygon polygon_of_G(const std::vector<RatFunc>& a, const RatFunc& x) {
    Polygon P;
    P.decorations.assign(a.rbegin(), a.rend());
    P.root = x;
    return P;
}

bool is_backward(const Arrow& a) { return a.to_side < a.from_vertex - 1; }

namespace {

// Positions on the rolled-out perimeter: v_j at (j-1)M, side e_k covers
// ((k-1)M, kM). Arrow tips on a side are ordered so arrows sharing the side
// never cross.
long vertex_pos(int j, int n) { return long(j - 1) * 2 * n; }

long tip_pos(const Arrow& a, int n) {
    int d = ((a.from_vertex - (a.to_side + 1)) % n + n) % n;
    return long(a.to_side - 1) * 2 * n + (n - 1 - d);
}

std::pair<long, long> interval(const Arrow& a, int n) {
    long p = vertex_pos(a.from_vertex, n), q = tip_pos(a, n);
    return {std::min(p, q), std::max(p, q)};
}

bool valid_arrow(int j, int k, int n) {
    int prev = j == 1 ? n : j - 1;
    return k != j && k != prev;
}

}  // namespace

bool arrows_cross(const Arrow& a, const Arrow& b, int nsides) {
    auto [a1, a2] = interval(a, nsides);
    auto [b1, b2] = interval(b, nsides);
    return (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
}

const std::vector<Dissection>& enumerate_maximal_dissections(int nsides) {
    static std::map<int, std::vector<Dissection>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nsides);
    if (it != cache.end()) return it->second;
    if (nsides < 2) throw PreconditionViolated("a polygon needs at least 2 sides");

    std::vector<Arrow> all;
    for (int j = 1; j <= nsides; ++j)
        for (int k = 1; k <= nsides; ++k)
            if (valid_arrow(j, k, nsides)) all.push_back({j, k});
    size_t m = all.size();
    std::vector<std::vector<char>> ok(m, std::vector<char>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) ok[i][j] = !arrows_cross(all[i], all[j], nsides);

    std::vector<Dissection> out;
    size_t need = size_t(nsides - 2);
    std::vector<size_t> cur;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (cur.size() == need) {
            Dissection D;
            for (size_t i : cur) D.arrows.push_back(all[i]);
            out.push_back(std::move(D));
            return;
        }
        for (size_t i = start; i < m; ++i) {
            if (m - i < need - cur.size()) break;
            bool good = true;
            for (size_t c : cur) good = good && ok[i][c];
            if (!good) continue;
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return cache.emplace(nsides, std::move(out)).first->second;
}

std::vector<Dissection> enumerate_maximal_dissections(const Polygon& P) {
    return enumerate_maximal_dissections(P.sides());
}

int dissection_sign(const Dissection& D) {
    int back = 0;
    for (const Arrow& a : D.arrows) back += is_backward(a);
    return back % 2 ? -1 : 1;
}

std::vector<std::vector<int>> DualTree::children() const {
    std::vector<std::vector<int>> ch(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i)
        if (parent[i] >= 0) ch[parent[i]].push_back(int(i));
    return ch;
}

DualTree dual_tree(int n, const Dissection& D) {
    size_t c = D.arrows.size();
    std::vector<std::pair<long, long>> iv;
    for (const Arrow& a : D.arrows) iv.push_back(interval(a, n));

    // Face 0 is the outer face; face i+1 lies directly under chord i.
    auto innermost = [&](long s, long t, long skip) {
        int best = -1;
        long len = 0;
        for (size_t i = 0; i < c; ++i) {
            if (long(i) == skip) continue;
            auto [a, b] = iv[i];
            if (a <= s && t <= b && (best < 0 || b - a < len)) {
                best = int(i);
                len = b - a;
            }
        }
        return best;
    };

    std::vector<std::vector<int>> seg_sides(c + 1);
    for (int k = 1; k <= n; ++k) {
        std::vector<long> cuts = {long(k - 1) * 2 * n, long(k) * 2 * n};
        for (const Arrow& a : D.arrows)
            if (a.to_side == k) cuts.push_back(tip_pos(a, n));
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            seg_sides[innermost(cuts[i], cuts[i + 1], -1) + 1].push_back(k);
    }

    DualTree T;
    T.nodes.resize(c + 1);
    T.parent.assign(c + 1, -1);
    T.root = 0;
    for (size_t f = 0; f <= c; ++f) {
        int root_side = f == 0 ? n : D.arrows[f - 1].to_side;
        const auto& ss = seg_sides[f];
        if (ss.size() != 2)
            throw PreconditionViolated("dissection face with " + std::to_string(ss.size()) +
                                       " side pieces");
        int other = ss[0] == root_side ? ss[1] : ss[0];
        T.nodes[f] = {other, root_side};
        if (f > 0) {
            auto [a, b] = iv[f - 1];
            int best = -1;
            long len = 0;
            for (size_t i = 0; i < c; ++i) {
                if (i == f - 1) continue;
                auto [x, y] = iv[i];
                if (x <= a && b <= y && (best < 0 || y - x < len)) {
                    best = int(i);
                    len = y - x;
                }
            }
            T.parent[f] = best + 1;
        }
    }
    return T;
}

std::vector<std::vector<int>> linear_extensions(const DualTree& T) {
    auto ch = T.children();
    std::vector<std::vector<int>> out;
    std::vector<int> order, avail = {T.root};
    std::function<void()> rec = [&] {
        if (avail.empty()) {
            if (order.size() == T.nodes.size()) out.push_back(order);
            return;
        }
        for (size_t i = 0; i < avail.size(); ++i) {
            int v = avail[i];
            std::vector<int> saved = avail;
            avail.erase(avail.begin() + i);
            avail.insert(avail.end(), ch[v].begin(), ch[v].end());
            order.push_back(v);
            rec();
            order.pop_back();
            avail = saved;
        }
    };
    rec();
    return out;
}

RatFunc mu(const RatFunc& x, const RatFunc& y) {
    if (x.is_zero()) return y;
    return RatFunc(1) - y / x;
}

namespace {

struct Structure {
    int sign;
    DualTree tree;
    std::vector<std::vector<int>> children;
};

const std::vector<Structure>& structures(int n) {
    static std::map<int, std::vector<Structure>> cache;
    static std::mutex m;
    const auto& ds = enumerate_maximal_dissections(n);
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Structure> out;
    for (const Dissection& D : ds) {
        Structure s{dissection_sign(D), dual_tree(n, D), {}};
        s.children = s.tree.children();
        out.push_back(std::move(s));
    }
    return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace

Symbol polygon_symbol(const Polygon& P, const Alphabet& A) {
    int n = P.sides();
    int w = n - 1;
    Symbol total(w);
    if (P.root.is_zero()) return total;
    if (n == 1) return Symbol::unit();

    std::map<std::pair<int, int>, std::optional<Symbol>> mus;
    auto mu_sym = [&](const Bigon& b) -> const std::optional<Symbol>& {
        auto key = std::make_pair(b.nonroot_side, b.root_side);
        auto it = mus.find(key);
        if (it != mus.end()) return it->second;
        std::optional<Symbol> s;
        const RatFunc &x = P.side(b.nonroot_side), &y = P.side(b.root_side);
        if (x != y) {
            Symbol e = expand_factor(mu(x, y), A);
            if (!e.is_zero()) s = std::move(e);
        }
        return mus.emplace(key, std::move(s)).first->second;
    };

    for (const Structure& st : structures(n)) {
        bool dead = false;
        for (const Bigon& b : st.tree.nodes)
            if (!mu_sym(b)) {
                dead = true;
                break;
            }
        if (dead) continue;
        std::function<Symbol(int)> build = [&](int v) {
            Symbol acc = Symbol::unit();
            for (int c : st.children[v]) acc = shuffle(acc, build(c));
            return mu_sym(st.tree.nodes[v])->tensor(acc);
        };
        Symbol s = build(st.tree.root);
        if (st.sign < 0)
            total -= s;
        else
            total += s;
    }
    return total;
}

Symbol dissection_term(const Polygon& P, const Dissection& D, const Alphabet& A) {
    int n = P.sides();
    DualTree T = dual_tree(n, D);
    auto ch = T.children();
    std::function<Symbol(int)> build = [&](int v) {
        Symbol acc = Symbol::unit();
        for (int c : ch[v]) acc = shuffle(acc, build(c));
        const Bigon& b = T.nodes[v];
        const RatFunc &x = P.side(b.nonroot_side), &y = P.side(b.root_side);
        Symbol m = x == y ? Symbol(1) : expand_factor(mu(x, y), A);
        return m.tensor(acc);
    };
    Symbol s = build(T.root);
    return dissection_sign(D) < 0 ? -s : s;
}

Symbol recursive_symbol(const Polygon& P, const Alphabet& A) {
    std::vector<RatFunc> a = P.decorations;
    a.push_back(P.root);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) throw NonGenericDecorations("decoration " + std::to_string(i + 1) + " is 0");
        for (size_t j = 0; j < i; ++j)
            if (a[i] == a[j])
                throw NonGenericDecorations("decorations " + std::to_string(j + 1) + " and " +
                                            std::to_string(i + 1) + " coincide");
    }
    std::function<Symbol(const std::vector<RatFunc>&)> rec = [&](const std::vector<RatFunc>& v) {
        if (v.size() == 1) return Symbol::unit();
        Symbol out(int(v.size()) - 1);
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            RatFunc prev = i == 0 ? RatFunc(0) : v[i - 1];
            RatFunc num = v[i] - v[i + 1], den = v[i] - prev;
            Symbol f(1);
            if (!num.is_zero()) f += expand_factor(num, A);
            if (!den.is_zero()) f -= expand_factor(den, A);
            std::vector<RatFunc> rest = v;
            rest.erase(rest.begin() + i);
            out += rec(rest).tensor(f);
        }
        return out;
    };
    return rec(a);
}

Alphabet generic_alphabet(const Polygon& P) {
    std::vector<RatFunc> vals = P.decorations;
    vals.push_back(P.root);
    RingPtr ring;
    for (const RatFunc& v : vals)
        if (v.ring() && v.ring()->size()) ring = v.ring();
    Alphabet A(ring ? ring : make_ring({}));
    auto absorb = [&](const RatFunc& f) {
        if (f.is_zero()) return;
        absorb_factors(A, f.num().lifted(A.ring()));
        absorb_factors(A, f.den().lifted(A.ring()));
    };
    for (const RatFunc& v : vals) absorb(v);
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j) absorb(vals[i] - vals[j]);
    return A;
}

HookTree hook_arrow_tree(int nsides, const Dissection& D) {
    DualTree T = dual_tree(nsides, D);
    HookTree t;
    for (const Bigon& b : T.nodes) t.push_back({b.nonroot_side, b.root_side});
    std::sort(t.begin(), t.end());
    return t;
}

bool is_interlaced(const HookTree& t) {
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = 0; j < t.size(); ++j) {
            int a1 = std::min(t[i].first, t[i].second), a2 = std::max(t[i].first, t[i].second);
            int b1 = std::min(t[j].first, t[j].second), b2 = std::max(t[j].first, t[j].second);
            if (a1 < b1 && b1 < a2 && a2 < b2) return true;
        }
    return false;
}

int hook_backward_edges(const HookTree& t) {
    int n = 0;
    for (const auto& [a, b] : t) n += b < a;
    return n;
}

std::vector<HookTree> enumerate_hook_arrow_trees(int n) {
    std::vector<HookTree> out;
    std::vector<int> parent(n + 1, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == n) {
            for (int u = 1; u < n; ++u) {
                int x = u, steps = 0;
                while (x != n && steps <= n) x = parent[x], ++steps;
                if (x != n) return;
            }
            HookTree t;
            for (int u = 1; u < n; ++u) t.push_back({u, parent[u]});
            std::sort(t.begin(), t.end());
            if (!is_interlaced(t)) out.push_back(std::move(t));
            return;
        }
        for (int p = 1; p <= n; ++p) {
            if (p == v) continue;
            parent[v] = p;
            rec(v + 1);
        }
    };
    rec(1);
    return out;
}

}  // namespace mplsym
