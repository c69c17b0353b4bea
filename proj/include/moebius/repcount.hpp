#pragma once

#include "moebius/cells.hpp"
#include "moebius/diagram.hpp"
#include "moebius/rational.hpp"

#include <optional>
#include <string>

namespace moebius {

struct FieldSpec {
    enum class Kind { Char0AlgClosed, Rationals, PrimeField };
    Kind kind = Kind::Char0AlgClosed;
    long p = 0;

    static FieldSpec char0() { return {Kind::Char0AlgClosed, 0}; }
    static FieldSpec rationals() { return {Kind::Rationals, 0}; }
    /// Throws PreconditionError when p is not prime.
    static FieldSpec prime(long p);
};

/// "char0", "rationals"/"Q", "prime:p" / "F_p".
FieldSpec parse_field(const std::string& s);
std::string field_name(const FieldSpec& f);

BigInt partition_count(long n);
long m_of_k(const FieldSpec& field, long k);
long n_irreducible_factors(const FieldSpec& field, long k);
long s_value(const FieldSpec& field, long r);

struct SimpleCountQuery {
    Family family = Family::Partition;
    int n = 0;
    int lambda_ts = 0;
    FieldSpec field;
    long r = 1;
    ZeroPattern zero_pattern = ZeroPattern::some_nonzero;
};

struct SimpleCount {
    BigInt count;
    bool upper_bound = false;  // non-planar over a field other than Char0AlgClosed
    long s = 0;
};

SimpleCount count_simples(const SimpleCountQuery& q);

/// Closed form for the number of left cells of the lambda layer. With check,
/// the half-diagram enumeration must agree or InvariantError is thrown.
BigInt dim_left_cell(Family f, int n, int lambda, int K, bool check = false);

struct DeligneParameters {
    Rational delta, delta_plus, delta_minus;
};

DeligneParameters deligne_parameters(const Rational& alpha0, const Rational& beta0,
                                     const Rational& gamma0, const Rational& lam_scale,
                                     const Rational& sqrt_lam);

} // namespace moebius
