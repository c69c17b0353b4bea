#pragma once

#include "moebius/params.hpp"
#include "moebius/semigroup.hpp"

#include <compare>
#include <vector>

namespace moebius {

/// a^i b^j in M = <a, b | ab = ba, ab = b^3, a^K = a^{K-r}>.
struct MElem {
    int i = 0;
    int j = 0;
    friend auto operator<=>(const MElem&, const MElem&) = default;
};

MElem m_mul(const MElem& x, const MElem& y, const MonoidParams& mp);
std::string render_melem(const MElem& x);

/// Element (f; pi) of M wr S_lambda. perm is 0-based: perm[k] = pi(k).
struct WreathElem {
    std::vector<MElem> strands;
    std::vector<int> perm;
    int lambda() const { return static_cast<int>(strands.size()); }
    static WreathElem identity(int lambda);
    friend auto operator<=>(const WreathElem&, const WreathElem&) = default;
};

/// strands_i = x.strands_i * y.strands_{x.perm^{-1}(i)}, perm = x.perm o y.perm
WreathElem wreath_mul(const WreathElem& x, const WreathElem& y, const MonoidParams& mp);

/// Elements of M(K, r) in the order index = 3 i + j.
std::vector<MElem> m_elements(const MonoidParams& mp);
int m_index(const MElem& x);
CayleyMonoid m_monoid(const MonoidParams& mp);

/// All of M wr S_lambda (or M^lambda when planar) as a Cayley table.
struct WreathMonoid {
    std::vector<WreathElem> elements;
    CayleyMonoid table;
};
WreathMonoid wreath_monoid(const MonoidParams& mp, int lambda, bool planar = false,
                           std::size_t guard = 5000);

struct MCellReport {
    int K = 0;
    int r = 0;
    bool degenerate = false;
    GreensCells cells;
    std::vector<std::vector<MElem>> j_cells;
    std::vector<MElem> idempotents;
    MElem predicted_idempotent_r;   // a^{K-r+rho}
    MElem predicted_idempotent_2r;  // a^{K-r+rho'} b^2
    bool singletons_ok = false;     // a^i b^j, i < K - r, each its own J-cell
    bool j_r_ok = false;            // J_r = {a^{K-r}, ..., a^{K-1}}
    bool j_2r_ok = false;           // J_2r = {a^i b^j : i >= K-r, j in {1,2}}
    bool idempotents_ok = false;    // predicted idempotents are the only ones in J_r, J_2r
    bool cyclic_r_ok = false;       // restricted table is Z/r with generator of order r
    bool cyclic_2r_ok = false;
    bool all_ok() const;
};

MCellReport m_cell_structure(const MonoidParams& mp);

/// a_{ik}: number of k-cycles whose cycle product lies in class i (k = 1..lambda).
struct TypeMatrix {
    std::vector<std::vector<int>> entries;
    friend auto operator<=>(const TypeMatrix&, const TypeMatrix&) = default;
};

/// class_of[m_index(x)] is the class id of x.
TypeMatrix wreath_type(const WreathElem& w, const std::vector<int>& class_of, int class_count,
                       const MonoidParams& mp);

BigInt count_types(int lambda, int class_count);

/// Brute-force ~ on M wr S_lambda; only offered for lambda <= 2 and |M| <= 6.
ClassPartition wreath_conjugacy_classes(const MonoidParams& mp, int lambda,
                                        std::vector<WreathElem>* elements = nullptr);

} // namespace moebius
