#include "moebius/semigroup.hpp"

#include "moebius/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace moebius {

void CayleyMonoid::validate() const
{
    if (size <= 0) throw PreconditionError("empty multiplication table");
    if (mul.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
        throw PreconditionError("multiplication table has the wrong shape");
    for (int v : mul)
        if (v < 0 || v >= size) throw PreconditionError("table not closed");
    if (identity < 0 || identity >= size) throw PreconditionError("identity out of range");
    for (int a = 0; a < size; ++a)
        if ((*this)(identity, a) != a || (*this)(a, identity) != a)
            throw PreconditionError("identity law fails for element " + std::to_string(a));
}

bool CayleyMonoid::is_associative() const
{
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            int ab = (*this)(a, b);
            for (int c = 0; c < size; ++c)
                if ((*this)(ab, c) != (*this)(a, (*this)(b, c))) return false;
        }
    return true;
}

CayleyMonoid cyclic_group(int k)
{
    CayleyMonoid g{k, std::vector<int>(static_cast<std::size_t>(k) * k), 0};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) g.mul[static_cast<std::size_t>(a * k + b)] = (a + b) % k;
    return g;
}

CayleyMonoid symmetric_group(int k)
{
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    int n = static_cast<int>(perms.size());
    CayleyMonoid g{n, std::vector<int>(static_cast<std::size_t>(n) * n), 0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<int> c(static_cast<std::size_t>(k));
            for (int x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(x)])];
            g.mul[static_cast<std::size_t>(a * n + b)] = index.at(c);
        }
    return g;
}

ClassPartition partition_from_labels(const std::vector<int>& labels)
{
    ClassPartition out;
    out.class_of.assign(labels.size(), -1);
    std::map<int, int> id;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = id.emplace(labels[i], static_cast<int>(out.classes.size()));
        if (fresh) out.classes.emplace_back();
        out.class_of[i] = it->second;
        out.classes[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    }
    return out;
}

namespace {

// Strongly connected components of an implicit graph; neighbor(v, t) for t < degree.
template <class Neighbor>
std::vector<int> scc_labels(int n, int degree, Neighbor neighbor)
{
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        comp(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::pair<int, int>> call;  // (vertex, next edge)
    int counter = 0, comps = 0;
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        call.push_back({root, 0});
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;
        while (!call.empty()) {
            auto& [v, t] = call.back();
            if (t < degree) {
                int w = neighbor(v, t++);
                if (index[static_cast<std::size_t>(w)] < 0) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
                }
                continue;
            }
            int vv = v;
            call.pop_back();
            if (!call.empty()) {
                int parent = call.back().first;
                low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(vv)]);
            }
            if (low[static_cast<std::size_t>(vv)] == index[static_cast<std::size_t>(vv)]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = 0;
                    comp[static_cast<std::size_t>(w)] = comps;
                } while (w != vv);
                ++comps;
            }
        }
    }
    return comp;
}

struct PowerCycle {
    std::vector<int> powers;  // powers[k] = x^k for k >= 1; powers[0] unused
    int index = 1;            // least k with x^k recurring
    int period = 1;

    int power(long k) const
    {
        if (k < static_cast<long>(powers.size())) return powers[static_cast<std::size_t>(k)];
        return powers[static_cast<std::size_t>(index + (k - index) % period)];
    }
    long omega_exponent() const
    {
        long t = period;
        while (t < index) t += period;
        return t;
    }
};

PowerCycle power_cycle(int x, const CayleyMonoid& mono)
{
    PowerCycle pc;
    std::vector<int> first(static_cast<std::size_t>(mono.size), -1);
    pc.powers.push_back(-1);
    int cur = x;
    for (int k = 1;; ++k) {
        if (first[static_cast<std::size_t>(cur)] >= 0) {
            pc.index = first[static_cast<std::size_t>(cur)];
            pc.period = k - pc.index;
            return pc;
        }
        first[static_cast<std::size_t>(cur)] = k;
        pc.powers.push_back(cur);
        cur = mono(cur, x);
    }
}

} // namespace

GreensCells greens_cells_bruteforce(const CayleyMonoid& mono, std::size_t guard)
{
    if (static_cast<std::size_t>(mono.size) > guard)
        throw ResourceGuardError("monoid of size " + std::to_string(mono.size) +
                                 " exceeds the Green's relation guard " + std::to_string(guard));
    mono.validate();
    int n = mono.size;
    auto left = scc_labels(n, n, [&](int v, int t) { return mono(t, v); });
    auto right = scc_labels(n, n, [&](int v, int t) { return mono(v, t); });
    auto two = scc_labels(n, 2 * n, [&](int v, int t) { return t < n ? mono(t, v) : mono(v, t - n); });
    std::vector<int> h(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) h[static_cast<std::size_t>(v)] = left[static_cast<std::size_t>(v)] * n + right[static_cast<std::size_t>(v)];
    return GreensCells{partition_from_labels(left), partition_from_labels(right),
                       partition_from_labels(two), partition_from_labels(h)};
}

int omega_power(int x, const CayleyMonoid& mono)
{
    PowerCycle pc = power_cycle(x, mono);
    return pc.power(pc.omega_exponent());
}

int omega_plus_one(int x, const CayleyMonoid& mono)
{
    PowerCycle pc = power_cycle(x, mono);
    return pc.power(pc.omega_exponent() + 1);
}

bool is_idempotent(int x, const CayleyMonoid& mono) { return mono(x, x) == x; }

int element_order(int g, const CayleyMonoid& mono)
{
    PowerCycle pc = power_cycle(g, mono);
    if (pc.index != 1) throw InvariantError("element does not lie in a subgroup");
    return pc.period;
}

ClassPartition generalized_conjugacy_classes(const CayleyMonoid& mono, std::size_t guard)
{
    if (static_cast<std::size_t>(mono.size) > guard)
        throw ResourceGuardError("monoid of size " + std::to_string(mono.size) +
                                 " exceeds the conjugacy guard " + std::to_string(guard));
    mono.validate();
    int n = mono.size;
    std::vector<int> om(static_cast<std::size_t>(n)), op(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> by_omega(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        PowerCycle pc = power_cycle(m, mono);
        long w = pc.omega_exponent();
        om[static_cast<std::size_t>(m)] = pc.power(w);
        op[static_cast<std::size_t>(m)] = pc.power(w + 1);
        by_omega[static_cast<std::size_t>(om[static_cast<std::size_t>(m)])].push_back(m);
    }
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (int x = 0; x < n; ++x)
        for (int xp = 0; xp < n; ++xp) {
            if (mono(mono(x, xp), x) != x || mono(mono(xp, x), xp) != xp) continue;
            const auto& ms = by_omega[static_cast<std::size_t>(mono(xp, x))];
            const auto& ns = by_omega[static_cast<std::size_t>(mono(x, xp))];
            for (int m : ms) {
                int target = mono(mono(x, op[static_cast<std::size_t>(m)]), xp);
                for (int nn : ns)
                    if (op[static_cast<std::size_t>(nn)] == target)
                        parent[static_cast<std::size_t>(find(m))] = find(nn);
            }
        }
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) labels[static_cast<std::size_t>(v)] = find(v);
    return partition_from_labels(labels);
}

} // namespace moebius
