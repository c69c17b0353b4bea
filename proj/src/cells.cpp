#include "moebius/cells.hpp"

#include "moebius/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace moebius {

void check_lambda_admissible(Family f, int n, int lambda)
{
    if (!lambda_admissible(f, n, lambda))
        throw PreconditionError("lambda = " + std::to_string(lambda) + " is not admissible for " +
                                family_name(f) + " at n = " + std::to_string(n));
}

namespace {

void choose(int total, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < total; ++i) {
        cur.push_back(i);
        choose(total, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> subsets(int total, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (k <= total) choose(total, k, 0, cur, out);
    return out;
}

struct HalfIndex {
    std::vector<HalfDiagram> list;
    std::map<Diagram, int> index;
};

std::shared_ptr<const HalfIndex> half_index(Family f, int n, int lambda, int K)
{
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const HalfIndex>> memo;
    auto key = std::make_tuple(static_cast<int>(f), n, lambda, K);
    {
        std::lock_guard lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    auto hi = std::make_shared<HalfIndex>();
    hi->list = enumerate_half_diagrams(f, n, lambda, K);
    for (std::size_t i = 0; i < hi->list.size(); ++i) hi->index.emplace(hi->list[i].base, static_cast<int>(i));
    std::lock_guard lock(mu);
    return memo.emplace(key, std::move(hi)).first->second;
}

} // namespace

std::vector<HalfDiagram> enumerate_half_diagrams(Family f, int n, int lambda, int K)
{
    check_lambda_admissible(f, n, lambda);
    if (K < 1) throw PreconditionError("K must be positive");
    std::vector<HalfDiagram> out;
    const int base = 3 * K;
    for (const auto& rgs : set_partitions(n)) {
        int t = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> parts(t);
        for (int c = 0; c < n; ++c) parts[rgs[c]].push_back(c);
        for (const auto& through : subsets(t, lambda)) {
            std::vector<Block> blocks;
            std::vector<int> free_blocks;
            std::size_t next = 0;
            for (int b = 0; b < t; ++b) {
                Block blk{parts[b], {}};
                if (next < through.size() && through[next] == b) {
                    blk.nodes.push_back(n + static_cast<int>(next));
                    ++next;
                } else {
                    free_blocks.push_back(b);
                }
                blocks.push_back(std::move(blk));
            }
            Diagram shape(n, lambda, blocks);
            if (!is_member(shape, f)) continue;
            std::vector<int> digit(free_blocks.size(), 0);
            while (true) {
                std::vector<Block> decorated = blocks;
                for (std::size_t i = 0; i < free_blocks.size(); ++i)
                    decorated[free_blocks[i]].dec = Decoration{digit[i] / 3, digit[i] % 3};
                out.push_back(HalfDiagram{Diagram(n, lambda, std::move(decorated)), lambda});
                std::size_t i = digit.size();
                bool carry = true;
                while (carry && i > 0) {
                    --i;
                    if (++digit[i] < base)
                        carry = false;
                    else
                        digit[i] = 0;
                }
                if (carry) break;
            }
        }
    }
    return out;
}

CellCoords cell_of(const Diagram& input, const MonoidParams& mp, Family f)
{
    if (input.n() != input.m() || !is_member(input, f))
        throw PreconditionError("diagram is not an element of " + family_name(f));
    Factorization fz = factorize(input, mp);
    int n = input.n();
    auto hi = half_index(f, n, fz.lambda_ts, mp.K);
    auto left = hi->index.find(fz.bottom);
    auto right = hi->index.find(star(fz.top));
    if (left == hi->index.end() || right == hi->index.end())
        throw InvariantError("factorization halves missing from the enumeration");
    return CellCoords{f, n, fz.lambda_ts, left->second, right->second};
}

std::vector<Diagram> jcell_elements(Family f, int n, int lambda, int K)
{
    check_lambda_admissible(f, n, lambda);
    std::vector<Diagram> out;
    for (const auto& shape : enumerate_shapes(f, n, n)) {
        if (through_strands(shape) != lambda) continue;
        auto decorated = decorate_all_blocks(shape, K);
        out.insert(out.end(), decorated.begin(), decorated.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<StrictIdempotent> find_strict_idempotent(const std::vector<Diagram>& jcell,
                                                       const ParamSet& ps)
{
    if (jcell.empty()) return std::nullopt;
    int lambda = through_strands(jcell.front());
    for (const auto& e : jcell) {
        LinComb sq = compose(e, e, ps);
        LinComb top(e.n(), e.m());
        for (const auto& [d, c] : sq.terms())
            if (through_strands(d) >= lambda) top.add(d, c);
        if (top.terms().size() != 1) continue;
        const auto& [d, s] = *top.terms().begin();
        if (d == e) return StrictIdempotent{e, s};
    }
    return std::nullopt;
}

ZeroPattern zero_pattern_of(const ParamSet& ps)
{
    bool zero = ps.p_alpha().is_zero() && ps.p_beta().is_zero() && ps.p_gamma().is_zero();
    return zero ? ZeroPattern::all_zero : ZeroPattern::some_nonzero;
}

ApexSet apex_set(Family f, int n, ZeroPattern zp)
{
    ApexSet out{f, n, zp, {}};
    std::set<int> full, parity;
    for (int l = 0; l <= n; ++l) {
        full.insert(l);
        if ((n - l) % 2 == 0) parity.insert(l);
    }
    bool all_zero = zp == ZeroPattern::all_zero;
    switch (f) {
    case Family::Partition:
    case Family::PlanarPartition: out.apexes = full; break;
    case Family::RookBrauer:
    case Family::Motzkin: out.apexes = all_zero ? parity : full; break;
    case Family::Brauer:
    case Family::TemperleyLieb: out.apexes = parity; break;
    case Family::Rook:
    case Family::PlanarRook: out.apexes = all_zero ? std::set<int>{n} : full; break;
    case Family::Symmetric:
    case Family::PlanarSymmetric: out.apexes = {n}; break;
    }
    if (all_zero) out.apexes.erase(0);
    // the identity cell always carries the identity idempotent
    out.apexes.insert(n);
    return out;
}

DiagramMonoid diagram_monoid(Family f, int n, const MonoidParams& mp, const EvaluationTable& evals,
                             std::size_t guard)
{
    evals.validate(mp.K);
    DiagramMonoid dm;
    for (const auto& shape : enumerate_shapes(f, n, n)) {
        auto decorated = decorate_all_blocks(shape, mp.K);
        dm.elements.insert(dm.elements.end(), decorated.begin(), decorated.end());
        if (dm.elements.size() > guard)
            throw ResourceGuardError("decorated monoid exceeds " + std::to_string(guard) + " elements");
    }
    std::sort(dm.elements.begin(), dm.elements.end());
    for (const auto& row : evals.values)
        for (const auto& v : row)
            if (v == 0) dm.has_zero = true;
    int size = static_cast<int>(dm.elements.size()) + (dm.has_zero ? 1 : 0);
    if (static_cast<std::size_t>(size) > guard)
        throw ResourceGuardError("decorated monoid exceeds " + std::to_string(guard) + " elements");

    std::map<Diagram, int> index;
    for (std::size_t i = 0; i < dm.elements.size(); ++i) index.emplace(dm.elements[i], static_cast<int>(i));
    dm.table.size = size;
    dm.table.mul.assign(static_cast<std::size_t>(size) * size, dm.zero_index());
    dm.table.identity = index.at(Diagram::identity(n));
    int count = static_cast<int>(dm.elements.size());
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            MonoidValue v = monoid_compose(dm.elements[a], dm.elements[b], mp, evals);
            if (!v) continue;
            auto it = index.find(*v);
            if (it == index.end()) throw InvariantError("decorated monoid is not closed under composition");
            dm.table.mul[static_cast<std::size_t>(a) * size + b] = it->second;
        }
    return dm;
}

namespace {

bool same_partition(const ClassPartition& a, const ClassPartition& b) { return a.classes == b.classes; }

bool equal_sizes_within(const ClassPartition& fine, const ClassPartition& j)
{
    for (const auto& jc : j.classes) {
        std::map<int, int> sizes;
        for (int x : jc) ++sizes[fine.class_of[x]];
        int first = sizes.begin()->second;
        for (const auto& [c, s] : sizes)
            if (s != first) return false;
    }
    return true;
}

} // namespace

CellComparison compare_cells(Family f, int n, const MonoidParams& mp)
{
    DiagramMonoid dm = diagram_monoid(f, n, mp, EvaluationTable::constant(mp.K, 1));
    GreensCells brute = greens_cells_bruteforce(dm.table);

    struct Sandwich {
        WreathMonoid wm;
        GreensCells cells;
        std::map<WreathElem, int> index;
    };
    std::map<int, Sandwich> sandwiches;
    auto sandwich = [&](int lambda) -> const Sandwich& {
        auto it = sandwiches.find(lambda);
        if (it != sandwiches.end()) return it->second;
        Sandwich s;
        s.wm = wreath_monoid(mp, lambda, is_planar_family(f));
        s.cells = greens_cells_bruteforce(s.wm.table);
        for (std::size_t i = 0; i < s.wm.elements.size(); ++i) s.index.emplace(s.wm.elements[i], static_cast<int>(i));
        return sandwiches.emplace(lambda, std::move(s)).first->second;
    };

    std::map<std::string, int> jkeys, lkeys, rkeys;
    std::vector<int> jl, ll, rl, lambdas;
    auto label = [](std::map<std::string, int>& keys, const std::string& k) {
        return keys.emplace(k, static_cast<int>(keys.size())).first->second;
    };
    for (const auto& d : dm.elements) {
        Factorization fz = factorize(d, mp);
        const Sandwich& s = sandwich(fz.lambda_ts);
        int mid = s.index.at(fz.middle);
        std::string lam = std::to_string(fz.lambda_ts);
        jl.push_back(label(jkeys, lam + "/" + std::to_string(s.cells.J.class_of[mid])));
        ll.push_back(label(lkeys, lam + "/" + render_diagram(fz.bottom) + "/" +
                                      std::to_string(s.cells.L.class_of[mid])));
        rl.push_back(label(rkeys, lam + "/" + render_diagram(fz.top) + "/" +
                                      std::to_string(s.cells.R.class_of[mid])));
        lambdas.push_back(fz.lambda_ts);
    }
    if (dm.has_zero) {
        jl.push_back(-1);
        ll.push_back(-1);
        rl.push_back(-1);
        lambdas.push_back(-1);
    }

    CellComparison out;
    out.element_count = dm.table.size;
    out.j_count = brute.J.count();
    out.j_match = same_partition(brute.J, partition_from_labels(jl));
    out.l_match = same_partition(brute.L, partition_from_labels(ll));
    out.r_match = same_partition(brute.R, partition_from_labels(rl));
    out.lambda_constant_on_j = true;
    for (const auto& jc : brute.J.classes)
        for (int x : jc)
            if (lambdas[x] != lambdas[jc.front()]) out.lambda_constant_on_j = false;
    out.equal_l_sizes = equal_sizes_within(brute.L, brute.J);
    out.equal_r_sizes = equal_sizes_within(brute.R, brute.J);
    return out;
}

} // namespace moebius
