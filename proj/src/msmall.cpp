#include "moebius/msmall.hpp"

#include "moebius/errors.hpp"
#include "moebius/repcount.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace moebius {

MElem m_mul(const MElem& x, const MElem& y, const MonoidParams& mp)
{
    long i = x.i + y.i;
    int j = x.j + y.j;
    if (j >= 3) {
        j -= 2;
        i += 1;
    }
    return MElem{static_cast<int>(handle_reduce_monoid(i, mp)), j};
}

std::string render_melem(const MElem& x)
{
    if (x.i == 0 && x.j == 0) return "1";
    std::string s;
    if (x.i == 1) s += "a";
    if (x.i > 1) s += "a^" + std::to_string(x.i);
    if (x.j == 1) s += "b";
    if (x.j == 2) s += "b^2";
    return s;
}

WreathElem WreathElem::identity(int lambda)
{
    WreathElem w;
    w.strands.assign(lambda, MElem{});
    w.perm.resize(lambda);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    return w;
}

WreathElem wreath_mul(const WreathElem& x, const WreathElem& y, const MonoidParams& mp)
{
    if (x.lambda() != y.lambda() || x.perm.size() != y.perm.size())
        throw PreconditionError("wreath elements of different length");
    int lambda = x.lambda();
    std::vector<int> xinv(lambda);
    for (int k = 0; k < lambda; ++k) xinv[x.perm[k]] = k;
    WreathElem out;
    out.strands.resize(lambda);
    out.perm.resize(lambda);
    for (int i = 0; i < lambda; ++i) {
        out.strands[i] = m_mul(x.strands[i], y.strands[xinv[i]], mp);
        out.perm[i] = x.perm[y.perm[i]];
    }
    return out;
}

std::vector<MElem> m_elements(const MonoidParams& mp)
{
    std::vector<MElem> out;
    for (int i = 0; i < mp.K; ++i)
        for (int j = 0; j < 3; ++j) out.push_back(MElem{i, j});
    return out;
}

int m_index(const MElem& x) { return 3 * x.i + x.j; }

CayleyMonoid m_monoid(const MonoidParams& mp)
{
    auto els = m_elements(mp);
    int n = static_cast<int>(els.size());
    CayleyMonoid mono{n, std::vector<int>(n * n), 0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mono.mul[a * n + b] = m_index(m_mul(els[a], els[b], mp));
    return mono;
}

WreathMonoid wreath_monoid(const MonoidParams& mp, int lambda, bool planar, std::size_t guard)
{
    auto mels = m_elements(mp);
    long base = static_cast<long>(mels.size());
    std::vector<std::vector<int>> perms;
    std::vector<int> p(lambda);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (!planar && std::next_permutation(p.begin(), p.end()));

    long strand_count = 1;
    for (int k = 0; k < lambda; ++k) strand_count *= base;
    long total = strand_count * static_cast<long>(perms.size());
    if (static_cast<std::size_t>(total) > guard)
        throw ResourceGuardError("wreath monoid of size " + std::to_string(total) +
                                 " exceeds the guard " + std::to_string(guard));

    std::map<std::vector<int>, long> perm_index;
    for (std::size_t i = 0; i < perms.size(); ++i) perm_index[perms[i]] = static_cast<long>(i);
    auto index_of = [&](const WreathElem& w) {
        long s = 0;
        for (int k = lambda - 1; k >= 0; --k) s = s * base + m_index(w.strands[k]);
        return perm_index.at(w.perm) * strand_count + s;
    };

    WreathMonoid out;
    for (const auto& perm : perms)
        for (long s = 0; s < strand_count; ++s) {
            WreathElem w;
            w.perm = perm;
            long rest = s;
            for (int k = 0; k < lambda; ++k) {
                w.strands.push_back(mels[rest % base]);
                rest /= base;
            }
            out.elements.push_back(std::move(w));
        }
    int n = static_cast<int>(total);
    out.table = CayleyMonoid{n, std::vector<int>(static_cast<std::size_t>(n) * n), 0};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out.table.mul[static_cast<std::size_t>(a) * n + b] =
                static_cast<int>(index_of(wreath_mul(out.elements[a], out.elements[b], mp)));
    out.table.identity = static_cast<int>(index_of(WreathElem::identity(lambda)));
    return out;
}

bool MCellReport::all_ok() const
{
    return singletons_ok && j_r_ok && j_2r_ok && idempotents_ok && cyclic_r_ok && cyclic_2r_ok;
}

namespace {

int mod(int a, int r) { return ((a % r) + r) % r; }

// The restricted table on `cell` is a cyclic group of the given order with
// identity e and generator g.
bool is_cyclic_cell(const std::set<int>& cell, int e, int g, int order, const CayleyMonoid& mono)
{
    if (static_cast<int>(cell.size()) != order || !cell.count(e) || !cell.count(g)) return false;
    for (int x : cell) {
        if (mono(e, x) != x || mono(x, e) != x) return false;
        for (int y : cell)
            if (!cell.count(mono(x, y))) return false;
    }
    std::set<int> generated;
    int cur = g;
    for (int k = 1; k <= order; ++k) {
        generated.insert(cur);
        if (k < order && cur == e) return false;
        if (k == order && cur != e) return false;
        cur = mono(cur, g);
    }
    return generated == cell;
}

} // namespace

MCellReport m_cell_structure(const MonoidParams& mp)
{
    MCellReport rep;
    rep.K = mp.K;
    rep.r = mp.r;
    rep.degenerate = mp.degenerate();
    CayleyMonoid mono = m_monoid(mp);
    auto els = m_elements(mp);
    rep.cells = greens_cells_bruteforce(mono);
    for (const auto& cls : rep.cells.J.classes) {
        std::vector<MElem> c;
        for (int x : cls) c.push_back(els[x]);
        rep.j_cells.push_back(std::move(c));
    }
    for (int x = 0; x < mono.size; ++x)
        if (is_idempotent(x, mono)) rep.idempotents.push_back(els[x]);

    const int K = mp.K, r = mp.r, low = K - r;
    auto jclass = [&](const MElem& x) { return rep.cells.J.class_of[m_index(x)]; };
    auto as_set = [&](const MElem& x) {
        const auto& c = rep.cells.J.classes[jclass(x)];
        return std::set<int>(c.begin(), c.end());
    };

    rep.singletons_ok = true;
    for (int i = 0; i < low; ++i)
        for (int j = 0; j < 3; ++j)
            if (as_set(MElem{i, j}).size() != 1) rep.singletons_ok = false;

    std::set<int> jr, j2r;
    for (int i = low; i < K; ++i) {
        jr.insert(m_index(MElem{i, 0}));
        j2r.insert(m_index(MElem{i, 1}));
        j2r.insert(m_index(MElem{i, 2}));
    }
    rep.j_r_ok = as_set(MElem{low, 0}) == jr;
    rep.j_2r_ok = as_set(MElem{low, 1}) == j2r;

    int rho = mod(-K, r), rho2 = mod(-K - 1, r);
    rep.predicted_idempotent_r = MElem{low + rho, 0};
    rep.predicted_idempotent_2r = MElem{low + rho2, 2};
    std::set<int> found_r, found_2r;
    for (const auto& e : rep.idempotents) {
        if (jr.count(m_index(e))) found_r.insert(m_index(e));
        if (j2r.count(m_index(e))) found_2r.insert(m_index(e));
    }
    int er = m_index(rep.predicted_idempotent_r), e2r = m_index(rep.predicted_idempotent_2r);
    rep.idempotents_ok = found_r == std::set<int>{er} && found_2r == std::set<int>{e2r};

    int m_r = m_index(MElem{static_cast<int>(handle_reduce_monoid(low + rho + 1, mp)), 0});
    int m_2r = m_index(MElem{low + rho, 1});
    rep.cyclic_r_ok = is_cyclic_cell(jr, er, m_r, r, mono);
    rep.cyclic_2r_ok = is_cyclic_cell(j2r, e2r, m_2r, 2 * r, mono);
    return rep;
}

TypeMatrix wreath_type(const WreathElem& w, const std::vector<int>& class_of, int class_count,
                       const MonoidParams& mp)
{
    int lambda = w.lambda();
    TypeMatrix t;
    t.entries.assign(class_count, std::vector<int>(lambda, 0));
    std::vector<int> inv(lambda);
    for (int k = 0; k < lambda; ++k) inv[w.perm[k]] = k;
    std::vector<char> seen(lambda, 0);
    for (int j = 0; j < lambda; ++j) {
        if (seen[j]) continue;
        // cycle product f(j) f(pi^{-1}(j)) ... around the cycle through j
        MElem prod{};
        int len = 0, cur = j;
        do {
            seen[cur] = 1;
            prod = m_mul(prod, w.strands[cur], mp);
            cur = inv[cur];
            ++len;
        } while (cur != j);
        ++t.entries[class_of.at(m_index(prod))][len - 1];
    }
    return t;
}

BigInt count_types(int lambda, int class_count)
{
    if (lambda < 0 || class_count < 0) throw PreconditionError("negative argument");
    // coefficient of x^lambda in (sum_k p(k) x^k)^class_count
    std::vector<BigInt> p(lambda + 1), acc(lambda + 1, BigInt(0));
    for (int k = 0; k <= lambda; ++k) p[k] = partition_count(k);
    acc[0] = 1;
    for (int c = 0; c < class_count; ++c) {
        std::vector<BigInt> next(lambda + 1, BigInt(0));
        for (int a = 0; a <= lambda; ++a)
            for (int b = 0; a + b <= lambda; ++b) next[a + b] += acc[a] * p[b];
        acc = std::move(next);
    }
    return acc[lambda];
}

ClassPartition wreath_conjugacy_classes(const MonoidParams& mp, int lambda,
                                        std::vector<WreathElem>* elements)
{
    if (lambda > 2 || 3 * mp.K > 6)
        throw ResourceGuardError("brute-force conjugacy on M wr S_lambda needs lambda <= 2 and |M| <= 6");
    WreathMonoid wm = wreath_monoid(mp, lambda);
    if (elements) *elements = wm.elements;
    return generalized_conjugacy_classes(wm.table);
}

} // namespace moebius
