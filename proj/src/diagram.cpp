#include "moebius/diagram.hpp"

#include "moebius/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace moebius {

Decoration normalize_decoration(Decoration d)
{
    if (d.mob >= 3) {
        long target = (d.mob % 2 == 1) ? 1 : 2;
        d.h += (d.mob - target) / 2;
        d.mob = target;
    }
    return d;
}

Diagram::Diagram(int n, int m, std::vector<Block> blocks) : n_(n), m_(m), blocks_(std::move(blocks))
{
    if (n < 0 || m < 0) throw PreconditionError("negative boundary size");
    std::vector<char> seen(static_cast<std::size_t>(n + m), 0);
    for (auto& b : blocks_) {
        if (b.nodes.empty()) throw PreconditionError("empty block");
        if (b.dec.h < 0 || b.dec.mob < 0) throw PreconditionError("negative decoration");
        std::sort(b.nodes.begin(), b.nodes.end());
        for (int c : b.nodes) {
            if (c < 0 || c >= n + m) throw PreconditionError("node out of range");
            if (seen[static_cast<std::size_t>(c)]) throw PreconditionError("node in two blocks");
            seen[static_cast<std::size_t>(c)] = 1;
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw PreconditionError("blocks do not cover every node");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.nodes.front() < b.nodes.front(); });
}

Diagram Diagram::identity(int n)
{
    std::vector<Block> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(Block{{i, n + i}, {}});
    return Diagram(n, n, std::move(blocks));
}

NodeId Diagram::node(int code) const
{
    if (code < n_) return NodeId{Side::bottom, code + 1};
    return NodeId{Side::top, code - n_ + 1};
}

int Diagram::code(NodeId id) const
{
    return id.side == Side::bottom ? id.index - 1 : n_ + id.index - 1;
}

bool Diagram::block_is_through(const Block& b) const
{
    return block_has_bottom(b) && block_has_top(b);
}

Diagram Diagram::with_decorations(const std::vector<Decoration>& decs) const
{
    if (decs.size() != blocks_.size()) throw PreconditionError("decoration count mismatch");
    Diagram out = *this;
    for (std::size_t i = 0; i < decs.size(); ++i) out.blocks_[i].dec = decs[i];
    return out;
}

Diagram Diagram::undecorated() const
{
    return with_decorations(std::vector<Decoration>(blocks_.size()));
}

namespace {

class LiteralReader {
public:
    explicit LiteralReader(std::string_view text)
    {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }

    void expect(char c)
    {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool accept(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    long number()
    {
        if (peek() == '-') fail("negative value");
        std::size_t start = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        if (pos_ - start > 9) fail("number too large");
        return std::stol(s_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("diagram literal, position " + std::to_string(pos_) + ": " + what);
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

Diagram parse_diagram(std::string_view text)
{
    LiteralReader in(text);
    int n = static_cast<int>(in.number());
    in.expect(';');
    int m = static_cast<int>(in.number());
    in.expect(';');
    std::vector<Block> blocks;
    std::vector<char> seen(static_cast<std::size_t>(n + m), 0);
    if (!in.done()) {
        do {
            Block b;
            in.expect('{');
            do {
                long idx = in.number();
                bool top = in.accept('\'');
                long limit = top ? m : n;
                if (idx < 1 || idx > limit) in.fail("node index out of range");
                int c = top ? n + static_cast<int>(idx) - 1 : static_cast<int>(idx) - 1;
                if (seen[static_cast<std::size_t>(c)]) in.fail("duplicate node");
                seen[static_cast<std::size_t>(c)] = 1;
                b.nodes.push_back(c);
            } while (in.accept(','));
            in.expect('}');
            in.expect('[');
            b.dec.h = in.number();
            in.expect(',');
            b.dec.mob = in.number();
            in.expect(']');
            blocks.push_back(std::move(b));
        } while (in.accept('|'));
    }
    if (!in.done()) in.fail("trailing characters");
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) in.fail("missing node");
    return Diagram(n, m, std::move(blocks));
}

std::string render_diagram(const Diagram& d)
{
    std::ostringstream out;
    out << d.n() << ';' << d.m() << ';';
    bool first_block = true;
    for (const auto& b : d.blocks()) {
        if (!first_block) out << '|';
        first_block = false;
        out << '{';
        for (std::size_t i = 0; i < b.nodes.size(); ++i) {
            if (i) out << ',';
            NodeId id = d.node(b.nodes[i]);
            out << id.index;
            if (id.side == Side::top) out << '\'';
        }
        out << "}[" << b.dec.h << ',' << b.dec.mob << ']';
    }
    return out.str();
}

Diagram normalize_mob(const Diagram& d)
{
    std::vector<Decoration> decs;
    for (const auto& b : d.blocks()) decs.push_back(normalize_decoration(b.dec));
    return d.with_decorations(decs);
}

Diagram reduce_monoid(const Diagram& d, const MonoidParams& mp)
{
    std::vector<Decoration> decs;
    for (const auto& b : d.blocks()) {
        Decoration x = normalize_decoration(b.dec);
        x.h = handle_reduce_monoid(x.h, mp);
        decs.push_back(x);
    }
    return d.with_decorations(decs);
}

Diagram tensor(const Diagram& d1, const Diagram& d2)
{
    int n1 = d1.n(), m1 = d1.m(), n2 = d2.n();
    int n = n1 + n2;
    std::vector<Block> blocks;
    for (const auto& b : d1.blocks()) {
        Block nb{{}, b.dec};
        for (int c : b.nodes) nb.nodes.push_back(c < n1 ? c : n + (c - n1));
        blocks.push_back(std::move(nb));
    }
    for (const auto& b : d2.blocks()) {
        Block nb{{}, b.dec};
        for (int c : b.nodes) nb.nodes.push_back(c < n2 ? n1 + c : n + m1 + (c - n2));
        blocks.push_back(std::move(nb));
    }
    return Diagram(n, m1 + d2.m(), std::move(blocks));
}

Diagram star(const Diagram& d)
{
    int n = d.n(), m = d.m();
    std::vector<Block> blocks;
    for (const auto& b : d.blocks()) {
        Block nb{{}, b.dec};
        for (int c : b.nodes) nb.nodes.push_back(c < n ? m + c : c - n);
        blocks.push_back(std::move(nb));
    }
    return Diagram(m, n, std::move(blocks));
}

int through_strands(const Diagram& d)
{
    int t = 0;
    for (const auto& b : d.blocks())
        if (d.block_is_through(b)) ++t;
    return t;
}

const std::vector<Family>& all_families()
{
    static const std::vector<Family> fs = {
        Family::Partition, Family::PlanarPartition, Family::RookBrauer, Family::Motzkin,
        Family::Brauer,    Family::TemperleyLieb,   Family::Rook,       Family::PlanarRook,
        Family::Symmetric, Family::PlanarSymmetric,
    };
    return fs;
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::Partition: return "Partition";
    case Family::PlanarPartition: return "PlanarPartition";
    case Family::RookBrauer: return "RookBrauer";
    case Family::Motzkin: return "Motzkin";
    case Family::Brauer: return "Brauer";
    case Family::TemperleyLieb: return "TemperleyLieb";
    case Family::Rook: return "Rook";
    case Family::PlanarRook: return "PlanarRook";
    case Family::Symmetric: return "Symmetric";
    case Family::PlanarSymmetric: return "PlanarSymmetric";
    }
    return "?";
}

Family parse_family(std::string_view s)
{
    auto squash = [](std::string_view x) {
        std::string out;
        for (char c : x)
            if (c != '-' && c != '_' && c != ' ')
                out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        return out;
    };
    std::string key = squash(s);
    if (key == "tl") return Family::TemperleyLieb;
    for (Family f : all_families())
        if (squash(family_name(f)) == key) return f;
    throw ParseError("unknown family '" + std::string(s) + "'");
}

bool is_planar_family(Family f)
{
    switch (f) {
    case Family::PlanarPartition:
    case Family::Motzkin:
    case Family::TemperleyLieb:
    case Family::PlanarRook:
    case Family::PlanarSymmetric: return true;
    default: return false;
    }
}

bool lambda_admissible(Family f, int n, int lambda)
{
    if (n < 0 || lambda < 0 || lambda > n) return false;
    switch (f) {
    case Family::Brauer:
    case Family::TemperleyLieb: return (n - lambda) % 2 == 0;
    case Family::Symmetric:
    case Family::PlanarSymmetric: return lambda == n;
    default: return true;
    }
}

bool is_planar(const Diagram& d)
{
    int n = d.n(), m = d.m();
    std::vector<std::vector<int>> pos;
    for (const auto& b : d.blocks()) {
        std::vector<int> p;
        for (int c : b.nodes) p.push_back(c < n ? c : 2 * n + m - 1 - c);
        std::sort(p.begin(), p.end());
        pos.push_back(std::move(p));
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
        for (std::size_t i = 0; i + 1 < pos[a].size(); ++i) {
            int lo = pos[a][i], hi = pos[a][i + 1];
            for (std::size_t b = 0; b < pos.size(); ++b) {
                if (b == a) continue;
                std::size_t inside = 0;
                for (int x : pos[b])
                    if (x > lo && x < hi) ++inside;
                if (inside > 0 && inside < pos[b].size()) return false;
            }
        }
    }
    return true;
}

bool is_member(const Diagram& d, Family f)
{
    bool max2 = true, all2 = true, rook = true, perm = true;
    for (const auto& b : d.blocks()) {
        std::size_t sz = b.nodes.size();
        bool through = d.block_is_through(b);
        if (sz > 2) max2 = false;
        if (sz != 2) all2 = false;
        if (sz > 2 || (sz == 2 && !through)) rook = false;
        if (sz != 2 || !through) perm = false;
    }
    switch (f) {
    case Family::Partition: return true;
    case Family::PlanarPartition: return is_planar(d);
    case Family::RookBrauer: return max2;
    case Family::Motzkin: return max2 && is_planar(d);
    case Family::Brauer: return all2;
    case Family::TemperleyLieb: return all2 && is_planar(d);
    case Family::Rook: return rook;
    case Family::PlanarRook: return rook && is_planar(d);
    case Family::Symmetric: return perm;
    case Family::PlanarSymmetric: return perm && is_planar(d);
    }
    return false;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int k) : parent(static_cast<std::size_t>(k)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

Stacked stack(const Diagram& upper, const Diagram& lower)
{
    if (lower.m() != upper.n())
        throw PreconditionError("boundary mismatch: " + std::to_string(lower.m()) + " vs " +
                                std::to_string(upper.n()));
    int n = lower.n(), k = lower.m(), m = upper.m();
    // ids: lower bottom 0..n-1, middle n..n+k-1, upper top n+k..n+k+m-1
    UnionFind uf(n + k + m);
    auto upper_id = [&](int c) { return n + c; };
    for (const auto& b : lower.blocks())
        for (int c : b.nodes) uf.unite(c, b.nodes.front());
    for (const auto& b : upper.blocks())
        for (int c : b.nodes) uf.unite(upper_id(c), upper_id(b.nodes.front()));

    std::vector<Decoration> dec(static_cast<std::size_t>(n + k + m));
    for (const auto& b : lower.blocks()) {
        auto& x = dec[static_cast<std::size_t>(uf.find(b.nodes.front()))];
        x.h += b.dec.h;
        x.mob += b.dec.mob;
    }
    for (const auto& b : upper.blocks()) {
        auto& x = dec[static_cast<std::size_t>(uf.find(upper_id(b.nodes.front())))];
        x.h += b.dec.h;
        x.mob += b.dec.mob;
    }

    std::vector<int> group_of(static_cast<std::size_t>(n + k + m), -1);
    std::vector<Block> groups;
    std::vector<char> open;
    for (int id = 0; id < n + k + m; ++id) {
        int root = uf.find(id);
        int& g = group_of[static_cast<std::size_t>(root)];
        if (g < 0) {
            g = static_cast<int>(groups.size());
            groups.push_back(Block{{}, dec[static_cast<std::size_t>(root)]});
            open.push_back(0);
        }
        if (id < n) {
            groups[static_cast<std::size_t>(g)].nodes.push_back(id);
            open[static_cast<std::size_t>(g)] = 1;
        } else if (id >= n + k) {
            groups[static_cast<std::size_t>(g)].nodes.push_back(id - k);
            open[static_cast<std::size_t>(g)] = 1;
        }
    }
    Stacked out;
    std::vector<Block> blocks;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (open[g])
            blocks.push_back(std::move(groups[g]));
        else
            out.closed.push_back(groups[g].dec);
    }
    out.diagram = Diagram(n, m, std::move(blocks));
    return out;
}

Factorization factorize(const Diagram& input, const MonoidParams& mp)
{
    Diagram d = reduce_monoid(input, mp);
    int n = d.n(), m = d.m();
    std::vector<const Block*> through;
    for (const auto& b : d.blocks())
        if (d.block_is_through(b)) through.push_back(&b);
    int lambda = static_cast<int>(through.size());

    auto min_top = [&](const Block* b) {
        for (int c : b->nodes)
            if (c >= n) return c;
        return n + m;
    };
    std::vector<int> top_order(through.size());
    std::iota(top_order.begin(), top_order.end(), 0);
    std::sort(top_order.begin(), top_order.end(),
              [&](int a, int b) { return min_top(through[static_cast<std::size_t>(a)]) < min_top(through[static_cast<std::size_t>(b)]); });
    std::vector<int> rank_in_top(through.size());
    for (std::size_t l = 0; l < top_order.size(); ++l) rank_in_top[static_cast<std::size_t>(top_order[l])] = static_cast<int>(l);

    Factorization f;
    f.lambda_ts = lambda;
    f.middle.strands.resize(static_cast<std::size_t>(lambda));
    f.middle.perm.resize(static_cast<std::size_t>(lambda));

    std::vector<Block> bottom, top;
    int k = 0;
    for (const auto& b : d.blocks()) {
        bool has_bottom = d.block_has_bottom(b), has_top = d.block_has_top(b);
        if (has_bottom && has_top) {
            int l = rank_in_top[static_cast<std::size_t>(k)];
            Block lower{{}, {}}, upper{{l}, {}};
            for (int c : b.nodes) {
                if (c < n)
                    lower.nodes.push_back(c);
                else
                    upper.nodes.push_back(lambda + (c - n));
            }
            lower.nodes.push_back(n + k);
            bottom.push_back(std::move(lower));
            top.push_back(std::move(upper));
            f.middle.strands[static_cast<std::size_t>(l)] =
                MElem{static_cast<int>(b.dec.h), static_cast<int>(b.dec.mob)};
            f.middle.perm[static_cast<std::size_t>(k)] = l;
            ++k;
        } else if (has_bottom) {
            bottom.push_back(b);
        } else {
            Block upper{{}, b.dec};
            for (int c : b.nodes) upper.nodes.push_back(lambda + (c - n));
            top.push_back(std::move(upper));
        }
    }
    f.bottom = Diagram(n, lambda, std::move(bottom));
    f.top = Diagram(lambda, m, std::move(top));
    return f;
}

Diagram wreath_to_diagram(const WreathElem& w)
{
    int lambda = w.lambda();
    std::vector<Block> blocks;
    for (int k = 0; k < lambda; ++k) {
        int l = w.perm[static_cast<std::size_t>(k)];
        const MElem& s = w.strands[static_cast<std::size_t>(l)];
        blocks.push_back(Block{{k, lambda + l}, Decoration{s.i, s.j}});
    }
    return Diagram(lambda, lambda, std::move(blocks));
}

Diagram recompose(const Factorization& f)
{
    Stacked lower = stack(wreath_to_diagram(f.middle), f.bottom);
    Stacked full = stack(f.top, lower.diagram);
    if (!lower.closed.empty() || !full.closed.empty())
        throw InvariantError("recomposition produced a closed component");
    return normalize_mob(full.diagram);
}

std::vector<std::vector<int>> set_partitions(int k)
{
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> a(static_cast<std::size_t>(k), 0), maxv(static_cast<std::size_t>(k), 0);
    while (true) {
        out.push_back(a);
        int i = k - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] == maxv[static_cast<std::size_t>(i - 1)] + 1) --i;
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        int mx = std::max(maxv[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        maxv[static_cast<std::size_t>(i)] = mx;
        for (int j = i + 1; j < k; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            maxv[static_cast<std::size_t>(j)] = mx;
        }
    }
    return out;
}

std::vector<Diagram> enumerate_shapes(Family f, int n, int m)
{
    std::vector<Diagram> out;
    for (const auto& rgs : set_partitions(n + m)) {
        int count = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<Block> blocks(static_cast<std::size_t>(count));
        for (int c = 0; c < n + m; ++c) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(c)])].nodes.push_back(c);
        Diagram d(n, m, std::move(blocks));
        if (is_member(d, f)) out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Diagram> decorate_all_blocks(const Diagram& shape, int K)
{
    std::size_t nb = shape.blocks().size();
    std::vector<int> digit(nb, 0);
    std::vector<Diagram> out;
    const int base = 3 * K;
    while (true) {
        std::vector<Decoration> decs;
        for (int t : digit) decs.push_back(Decoration{t / 3, t % 3});
        out.push_back(shape.with_decorations(decs));
        std::size_t i = nb;
        while (i > 0) {
            --i;
            if (++digit[i] < base) break;
            digit[i] = 0;
            if (i == 0) return out;
        }
        if (nb == 0) return out;
    }
}

} // namespace moebius
