#pragma once

#include "moebius/msmall.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace moebius {

enum class Side { bottom, top };

struct NodeId {
    Side side = Side::bottom;
    int index = 1;  // 1-based
    friend bool operator==(const NodeId&, const NodeId&) = default;
};

struct Decoration {
    long h = 0;
    long mob = 0;
    friend auto operator<=>(const Decoration&, const Decoration&) = default;
};

/// mob >= 3 -> (mob - 2, h + 1), applied until mob <= 2.
Decoration normalize_decoration(Decoration d);

/// Nodes are coded as integers: bottom i -> i - 1, top j -> n + j - 1.
struct Block {
    std::vector<int> nodes;
    Decoration dec;
    friend auto operator<=>(const Block&, const Block&) = default;
};

class Diagram {
public:
    Diagram() = default;
    /// Sorts nodes and blocks; throws PreconditionError on a bad cover.
    Diagram(int n, int m, std::vector<Block> blocks);

    static Diagram identity(int n);
    static Diagram empty() { return Diagram(); }

    int n() const { return n_; }
    int m() const { return m_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    bool is_bottom(int code) const { return code < n_; }
    NodeId node(int code) const;
    int code(NodeId id) const;

    bool block_is_through(const Block& b) const;
    bool block_has_bottom(const Block& b) const { return is_bottom(b.nodes.front()); }
    bool block_has_top(const Block& b) const { return !is_bottom(b.nodes.back()); }

    Diagram with_decorations(const std::vector<Decoration>& decs) const;
    Diagram undecorated() const;

    friend auto operator<=>(const Diagram&, const Diagram&) = default;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Block> blocks_;
};

Diagram parse_diagram(std::string_view text);
std::string render_diagram(const Diagram& d);

Diagram normalize_mob(const Diagram& d);
Diagram tensor(const Diagram& d1, const Diagram& d2);
Diagram star(const Diagram& d);
int through_strands(const Diagram& d);

/// Reduces every handle count with handle_reduce_monoid after normalizing mob.
Diagram reduce_monoid(const Diagram& d, const MonoidParams& mp);

enum class Family {
    Partition,
    PlanarPartition,
    RookBrauer,
    Motzkin,
    Brauer,
    TemperleyLieb,
    Rook,
    PlanarRook,
    Symmetric,
    PlanarSymmetric,
};

const std::vector<Family>& all_families();
std::string family_name(Family f);
/// Accepts the enum spelling in any case, plus short aliases (tl, rook, ...).
Family parse_family(std::string_view s);
bool is_planar_family(Family f);
/// Through-strand counts a family can realize on n -> n diagrams.
bool lambda_admissible(Family f, int n, int lambda);

/// Non-crossing in the circular order B1..Bn, Tm..T1.
bool is_planar(const Diagram& d);
bool is_member(const Diagram& d, Family f);

/// Result of stacking `upper` on `lower` before any evaluation: the merged
/// diagram (decorations summed, not normalized) and the closed components.
struct Stacked {
    Diagram diagram;
    std::vector<Decoration> closed;
};

/// upper: k -> m on top of lower: n -> k.
Stacked stack(const Diagram& upper, const Diagram& lower);

struct Factorization {
    Diagram top;        // lambda -> m
    WreathElem middle;  // strands indexed by top order
    Diagram bottom;     // n -> lambda
    int lambda_ts = 0;
};

Factorization factorize(const Diagram& d, const MonoidParams& mp);
Diagram recompose(const Factorization& f);
/// lambda -> lambda diagram with blocks {k, pi(k)'} decorated by strands[pi(k)].
Diagram wreath_to_diagram(const WreathElem& w);

/// Every undecorated diagram n -> m of the family, in a deterministic order.
std::vector<Diagram> enumerate_shapes(Family f, int n, int m);

/// All decorations (h, mob) in [0,K) x {0,1,2} on every block of `shape`.
std::vector<Diagram> decorate_all_blocks(const Diagram& shape, int K);

/// Set partitions of {0..k-1} as restricted growth strings.
std::vector<std::vector<int>> set_partitions(int k);

} // namespace moebius
