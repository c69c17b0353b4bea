#pragma once

#include <cstddef>
#include <vector>

namespace moebius {

/// Finite monoid given by its multiplication table.
struct CayleyMonoid {
    int size = 0;
    std::vector<int> mul;  // row-major: mul[a * size + b] = a b
    int identity = 0;

    int operator()(int a, int b) const { return mul[static_cast<std::size_t>(a) * size + b]; }
    /// Throws PreconditionError when entries leave the table or identity fails.
    void validate() const;
    bool is_associative() const;
};

/// Cyclic group Z/k, and the symmetric group S_k (elements = permutations in
/// lexicographic order).
CayleyMonoid cyclic_group(int k);
CayleyMonoid symmetric_group(int k);

struct ClassPartition {
    std::vector<int> class_of;
    std::vector<std::vector<int>> classes;  // sorted, ordered by least member
    int count() const { return static_cast<int>(classes.size()); }
};

ClassPartition partition_from_labels(const std::vector<int>& labels);

struct GreensCells {
    ClassPartition L, R, J, H;
};

/// Cells from the one- and two-sided ideal preorders. Guard: 5000 elements.
GreensCells greens_cells_bruteforce(const CayleyMonoid& mono, std::size_t guard = 5000);

int omega_power(int x, const CayleyMonoid& mono);
/// x^{omega+1}
int omega_plus_one(int x, const CayleyMonoid& mono);
bool is_idempotent(int x, const CayleyMonoid& mono);

/// m ~ n via inverse pairs (x, x'); guard 300 elements.
ClassPartition generalized_conjugacy_classes(const CayleyMonoid& mono, std::size_t guard = 300);

/// Order of g inside the cyclic subsemigroup it generates, assuming g lies in a group.
int element_order(int g, const CayleyMonoid& mono);

} // namespace moebius
