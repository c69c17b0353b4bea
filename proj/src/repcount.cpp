#include "moebius/repcount.hpp"

#include "moebius/errors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>

namespace moebius {

namespace {

bool is_prime(long p)
{
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long euler_phi(long n)
{
    long out = n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        while (n % d == 0) n /= d;
        out -= out / d;
    }
    if (n > 1) out -= out / n;
    return out;
}

long multiplicative_order(long p, long d)
{
    if (d == 1) return 1;
    long x = p % d, k = 1;
    while (x != 1) {
        x = (x * p) % d;
        ++k;
    }
    return k;
}

std::vector<long> divisors(long m)
{
    std::vector<long> out;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) out.push_back(d);
    return out;
}

BigInt double_factorial_odd(long k)  // k!! for odd k, and (-1)!! = 1
{
    BigInt out = 1;
    for (long x = k; x > 1; x -= 2) out *= x;
    return out;
}

BigInt ipow(long base, long e)
{
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return out;
}

BigInt stirling2(long n, long k)
{
    std::vector<std::vector<BigInt>> s(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
    s[0][0] = 1;
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    return (k >= 0 && k <= n) ? s[n][k] : BigInt(0);
}

BigInt as_integer(const Rational& x, const char* what)
{
    if (x.get_den() != 1) throw InvariantError(std::string(what) + " is not an integer");
    return x.get_num();
}

} // namespace

FieldSpec FieldSpec::prime(long p)
{
    if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
    return {Kind::PrimeField, p};
}

FieldSpec parse_field(const std::string& raw)
{
    std::string s;
    for (char c : raw) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "char0" || s == "char0algclosed" || s == "c") return FieldSpec::char0();
    if (s == "rationals" || s == "q") return FieldSpec::rationals();
    std::string digits;
    if (s.rfind("prime:", 0) == 0)
        digits = s.substr(6);
    else if (s.rfind("f_", 0) == 0)
        digits = s.substr(2);
    else if (s.rfind("f", 0) == 0)
        digits = s.substr(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 9)
        throw ParseError("unknown field '" + raw + "'");
    return FieldSpec::prime(std::stol(digits));
}

std::string field_name(const FieldSpec& f)
{
    switch (f.kind) {
    case FieldSpec::Kind::Char0AlgClosed: return "Char0AlgClosed";
    case FieldSpec::Kind::Rationals: return "Rationals";
    case FieldSpec::Kind::PrimeField: return "PrimeField(" + std::to_string(f.p) + ")";
    }
    return "?";
}

BigInt partition_count(long n)
{
    if (n < 0) return 0;
    static std::mutex mu;
    static std::vector<BigInt> memo{BigInt(1)};
    std::lock_guard lock(mu);
    while (static_cast<long>(memo.size()) <= n) {
        long k = static_cast<long>(memo.size());
        BigInt p = 0;
        for (long j = 1;; ++j) {
            long g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
            if (g1 > k) break;
            BigInt term = memo[k - g1];
            if (g2 <= k) term += memo[k - g2];
            if (j % 2 == 1)
                p += term;
            else
                p -= term;
        }
        memo.push_back(p);
    }
    return memo[n];
}

long m_of_k(const FieldSpec& field, long k)
{
    if (k < 1) throw PreconditionError("k must be positive");
    if (field.kind != FieldSpec::Kind::PrimeField) return k;
    while (k % field.p == 0) k /= field.p;
    return k;
}

long n_irreducible_factors(const FieldSpec& field, long k)
{
    long m = m_of_k(field, k);
    switch (field.kind) {
    case FieldSpec::Kind::Char0AlgClosed: return m;
    case FieldSpec::Kind::Rationals: return static_cast<long>(divisors(m).size());
    case FieldSpec::Kind::PrimeField: {
        long total = 0;
        for (long d : divisors(m)) total += euler_phi(d) / multiplicative_order(field.p, d);
        return total;
    }
    }
    return 0;
}

long s_value(const FieldSpec& field, long r)
{
    if (r < 1 || r % 2 == 0) throw PreconditionError("r must be a positive odd integer");
    return 1 + n_irreducible_factors(field, r) + n_irreducible_factors(field, 2 * r);
}

namespace {

// sum over s-tuples (l_1..l_s) with sum l of p(l_1)...p(l_s)
BigInt tuple_sum(long s, long l)
{
    if (s == 0) return l == 0 ? 1 : 0;
    BigInt total = 0;
    for (long first = 0; first <= l; ++first) total += partition_count(first) * tuple_sum(s - 1, l - first);
    return total;
}

} // namespace

SimpleCount count_simples(const SimpleCountQuery& q)
{
    ApexSet ap = apex_set(q.family, q.n, q.zero_pattern);
    if (!ap.apexes.count(q.lambda_ts))
        throw PreconditionError("lambda = " + std::to_string(q.lambda_ts) + " is not an apex of " +
                                family_name(q.family) + " at n = " + std::to_string(q.n));
    SimpleCount out;
    out.s = s_value(q.field, q.r);
    if (is_planar_family(q.family)) {
        out.count = ipow(out.s, q.lambda_ts);
    } else {
        out.count = tuple_sum(out.s, q.lambda_ts);
        out.upper_bound = q.field.kind != FieldSpec::Kind::Char0AlgClosed;
    }
    return out;
}

BigInt dim_left_cell(Family f, int n, int lambda, int K, bool check)
{
    check_lambda_admissible(f, n, lambda);
    if (K < 1) throw PreconditionError("K must be positive");
    const long k3 = 3L * K;
    BigInt value = 0;
    switch (f) {
    case Family::Partition:
        for (long t = lambda; t <= n; ++t) value += stirling2(n, t) * binomial(t, lambda) * ipow(k3, t - lambda);
        break;
    case Family::PlanarPartition: {
        Rational x = frac(4L * lambda + 2, 2L * n + 2L * lambda + 2);
        x *= Rational(binomial(2L * n, n - lambda) * ipow(k3, n - lambda));
        value = as_integer(x, "planar partition count");
        break;
    }
    case Family::RookBrauer:
        for (long t = 0; 2 * t <= n - lambda; ++t)
            value += binomial(n, lambda) * binomial(n - lambda, 2 * t) * double_factorial_odd(2 * t - 1) *
                     ipow(k3, n - lambda - t);
        break;
    case Family::Motzkin: {
        Rational x = 0;
        for (long t = 0; lambda + 2 * t <= n; ++t)
            x += frac(lambda + 1, lambda + t + 1) *
                 Rational(binomial(n, lambda + 2 * t) * binomial(lambda + 2 * t, t) * ipow(k3, n - lambda - t));
        value = as_integer(x, "Motzkin count");
        break;
    }
    case Family::Brauer:
        value = binomial(n, lambda) * double_factorial_odd(n - lambda - 1) * ipow(k3, (n - lambda) / 2);
        break;
    case Family::TemperleyLieb: {
        Rational x = frac(2L * lambda + 2, n + lambda + 2);
        x *= Rational(binomial(n, (n - lambda) / 2) * ipow(k3, (n - lambda) / 2));
        value = as_integer(x, "Temperley-Lieb count");
        break;
    }
    case Family::Rook:
    case Family::PlanarRook: value = binomial(n, lambda) * ipow(k3, n - lambda); break;
    case Family::Symmetric:
    case Family::PlanarSymmetric: value = 1; break;
    }
    if (check) {
        auto count = enumerate_half_diagrams(f, n, lambda, K).size();
        if (BigInt(static_cast<unsigned long>(count)) != value)
            throw InvariantError("closed form " + value.get_str() + " differs from enumeration " +
                                 std::to_string(count) + " for " + family_name(f) + " n=" +
                                 std::to_string(n) + " lambda=" + std::to_string(lambda) +
                                 " K=" + std::to_string(K));
    }
    return value;
}

DeligneParameters deligne_parameters(const Rational& alpha0, const Rational& beta0,
                                     const Rational& gamma0, const Rational& lam_scale,
                                     const Rational& sqrt_lam)
{
    if (sqrt_lam * sqrt_lam != lam_scale) throw PreconditionError("sqrt_lam^2 must equal lam_scale");
    DeligneParameters out;
    out.delta = lam_scale * alpha0 - gamma0;
    out.delta_plus = (gamma0 + sqrt_lam * beta0) / 2;
    out.delta_minus = (gamma0 - sqrt_lam * beta0) / 2;
    return out;
}

} // namespace moebius
