#pragma once

#include "moebius/algebra.hpp"
#include "moebius/diagram.hpp"
#include "moebius/semigroup.hpp"

#include <optional>
#include <set>
#include <vector>

namespace moebius {

/// Bottom half n -> lambda: through blocks hold exactly one top node, assigned in
/// order of their least bottom node, and carry no decoration.
struct HalfDiagram {
    Diagram base;
    int lambda_ts = 0;
    friend auto operator<=>(const HalfDiagram&, const HalfDiagram&) = default;
};

/// Throws PreconditionError when lambda is out of range or has the wrong parity.
void check_lambda_admissible(Family f, int n, int lambda);

std::vector<HalfDiagram> enumerate_half_diagrams(Family f, int n, int lambda, int K);

struct CellCoords {
    Family family = Family::Partition;
    int n = 0;
    int lambda_ts = 0;
    int left_index = 0;
    int right_index = 0;
    friend bool operator==(const CellCoords&, const CellCoords&) = default;
};

/// d is normalized first. Throws PreconditionError when d is not an n -> n member of f.
CellCoords cell_of(const Diagram& d, const MonoidParams& mp, Family f);

/// Every decorated n -> n diagram of f with `lambda` through strands (all blocks decorated).
std::vector<Diagram> jcell_elements(Family f, int n, int lambda, int K);

struct StrictIdempotent {
    Diagram element;
    Rational scalar;
};

/// First e (in the given order) with e o e = s e modulo fewer through strands, s != 0.
std::optional<StrictIdempotent> find_strict_idempotent(const std::vector<Diagram>& jcell,
                                                       const ParamSet& ps);

enum class ZeroPattern { all_zero, some_nonzero };

ZeroPattern zero_pattern_of(const ParamSet& ps);

struct ApexSet {
    Family family = Family::Partition;
    int n = 0;
    ZeroPattern zero_pattern = ZeroPattern::some_nonzero;
    std::set<int> apexes;
};

ApexSet apex_set(Family f, int n, ZeroPattern zp);

/// The decorated n -> n monoid of f with h < K, mob <= 2 and the formal zero
/// appended when some evaluation is 0.
struct DiagramMonoid {
    std::vector<Diagram> elements;
    bool has_zero = false;
    CayleyMonoid table;
    int zero_index() const { return has_zero ? static_cast<int>(elements.size()) : -1; }
};

DiagramMonoid diagram_monoid(Family f, int n, const MonoidParams& mp, const EvaluationTable& evals,
                             std::size_t guard = 5000);

/// Compares brute-force Green's cells of the decorated monoid with the cell
/// description: J by (lambda, J-class of the middle in the sandwiched monoid),
/// L by (lambda, bottom, L-class of the middle), R by (lambda, top, R-class).
struct CellComparison {
    bool j_match = false;
    bool l_match = false;
    bool r_match = false;
    bool lambda_constant_on_j = false;
    bool equal_l_sizes = false;
    bool equal_r_sizes = false;
    int element_count = 0;
    int j_count = 0;
    bool ok() const
    {
        return j_match && l_match && r_match && lambda_constant_on_j && equal_l_sizes &&
               equal_r_sizes;
    }
};

CellComparison compare_cells(Family f, int n, const MonoidParams& mp);

} // namespace moebius
