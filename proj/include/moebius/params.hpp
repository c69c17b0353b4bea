#pragma once

#include "moebius/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace moebius {

/// Polynomial over Q; coefficient index is the degree, trailing zeros trimmed.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs);

    static PolyQ constant(const Rational& c);
    /// 1 - T^r
    static PolyQ one_minus_power(int r);

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of T^i, zero beyond the degree.
    Rational operator[](int i) const;

    friend bool operator==(const PolyQ&, const PolyQ&) = default;

private:
    std::vector<Rational> coeffs_;
};

enum class SeriesKind { alpha = 0, beta = 1, gamma = 2 };

struct ZeroAlphaPolicy {
    bool allow = false;
};

class SeriesCache;

/// Evaluation data: Z_x = p_x / q and the handle relation derived from q.
class ParamSet {
public:
    const PolyQ& p_alpha() const { return p_[0]; }
    const PolyQ& p_beta() const { return p_[1]; }
    const PolyQ& p_gamma() const { return p_[2]; }
    const PolyQ& p(SeriesKind kind) const { return p_[static_cast<int>(kind)]; }
    const PolyQ& q() const { return q_; }

    int N() const { return N_; }
    int M_deg() const { return M_; }
    int K() const { return K_; }

    /// (a_1, ..., a_M) with q(T) = 1 - a_1 T + a_2 T^2 - ...
    const std::vector<Rational>& handle_coeffs() const { return handle_coeffs_; }

    /// h^K = sum_{i=1}^{M} c_i h^{K-i}; returns (c_1, ..., c_M).
    const std::vector<Rational>& recurrence() const { return recurrence_; }

    /// Coefficients of h^0..h^{K-1} equal to h^e modulo the handle relation.
    std::vector<Rational> handle_reduction(long e) const;

    /// true when q = 1 - T^r for some r >= 1; sets r.
    bool is_monomial(int* r = nullptr) const;

private:
    friend ParamSet validate_params(PolyQ, PolyQ, PolyQ, PolyQ, ZeroAlphaPolicy);
    friend Rational series_coeff(const ParamSet&, SeriesKind, long);

    PolyQ p_[3];
    PolyQ q_;
    int N_ = 0;
    int M_ = 0;
    int K_ = 1;
    std::vector<Rational> handle_coeffs_;
    std::vector<Rational> recurrence_;
    std::shared_ptr<SeriesCache> cache_;
};

/// Rejects q(0) != 1, deg p_beta >= K, deg p_gamma >= K, and p_alpha = 0
/// unless the policy allows it (then N is taken as 0).
ParamSet validate_params(PolyQ p_alpha, PolyQ p_beta, PolyQ p_gamma, PolyQ q,
                         ZeroAlphaPolicy policy = {});

/// k-th Taylor coefficient of p_kind / q. Thread safe; memoized.
Rational series_coeff(const ParamSet& ps, SeriesKind kind, long k);

/// Constant-term parameters with q = 1 - T (K = 1).
ParamSet constant_params(const Rational& alpha0, const Rational& beta0, const Rational& gamma0);

struct MonoidParams {
    int K = 1;
    int r = 1;

    bool degenerate() const { return K == r; }
};

/// Checks r odd and positive, K >= r.
MonoidParams make_monoid_params(int K, int r);

/// Derives (K, r) from a ParamSet whose q is 1 - T^r with r odd.
MonoidParams monoid_params_of(const ParamSet& ps);

/// Replaces h >= K by h - r until h < K.
long handle_reduce_monoid(long h, const MonoidParams& mp);

/// JSON parameter file: {"p_alpha":[...], "p_beta":[...], "p_gamma":[...], "q":[...]}.
ParamSet params_from_json_text(const std::string& text, ZeroAlphaPolicy policy = {});
std::string params_to_json_text(const ParamSet& ps);

} // namespace moebius
