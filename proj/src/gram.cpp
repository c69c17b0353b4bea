#include "moebius/gram.hpp"

#include "moebius/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

namespace moebius {

namespace {

void require_compatible(const ParamSet& ps, const MonoidParams& mp)
{
    MonoidParams own = monoid_params_of(ps);
    if (own.K != mp.K || own.r != mp.r)
        throw PreconditionError("incompatible parameters: ParamSet gives (K, r) = (" +
                                std::to_string(own.K) + ", " + std::to_string(own.r) + ")");
}

WreathElem wpow(const WreathElem& x, long e, const MonoidParams& mp)
{
    WreathElem out = WreathElem::identity(x.lambda());
    for (long i = 0; i < e; ++i) out = wreath_mul(out, x, mp);
    return out;
}

// An m with m w m = m: the inverse of w^{omega+1} inside the group around w^omega.
WreathElem sandwich_witness(const WreathElem& w, const MonoidParams& mp)
{
    std::map<WreathElem, long> seen;
    WreathElem cur = w;
    long k = 1;
    while (!seen.count(cur)) {
        seen.emplace(cur, k++);
        cur = wreath_mul(cur, w, mp);
    }
    long index = seen.at(cur), period = k - index;
    long t = period;
    while (t < index) t += period;
    WreathElem e = wpow(w, t, mp);
    WreathElem g = wreath_mul(e, w, mp);
    // g has order dividing period in the group with identity e
    WreathElem m = e;
    for (long i = 1; i < period; ++i) m = wreath_mul(m, g, mp);
    if (wreath_mul(wreath_mul(m, w, mp), m, mp) != m)
        throw InvariantError("sandwich witness failed");
    return m;
}

} // namespace

Rational gram_entry(const HalfDiagram& bottom, const HalfDiagram& top_star, const ParamSet& ps,
                    const MonoidParams& mp)
{
    require_compatible(ps, mp);
    if (bottom.lambda_ts != top_star.lambda_ts || bottom.base.n() != top_star.base.n())
        throw PreconditionError("half diagrams from different cells");
    LinComb x = compose(LinComb(bottom.base), LinComb(star(top_star.base)), ps);
    if (x.is_zero()) return 0;
    if (x.terms().size() != 1) throw InvariantError("middle product is not a single diagram");
    const auto& [w, c] = *x.terms().begin();
    if (through_strands(w) < bottom.lambda_ts) return 0;
    sandwich_witness(factorize(w, mp).middle, mp);
    return c;
}

GramMatrix gram_matrix(Family f, int n, int lambda, const ParamSet& ps,
                       const std::vector<HalfDiagram>& halves)
{
    MonoidParams mp = monoid_params_of(ps);
    GramMatrix g;
    g.family = f;
    g.n = n;
    g.lambda_ts = lambda;
    g.row_labels = halves;
    g.col_labels = halves;
    std::size_t dim = halves.size();
    g.entries.assign(dim, std::vector<Rational>(dim, Rational(0)));

    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    if (dim < 64) workers = 1;
    auto fill = [&](unsigned w) {
        for (std::size_t i = w; i < dim; i += workers)
            for (std::size_t j = 0; j < dim; ++j) g.entries[i][j] = gram_entry(halves[j], halves[i], ps, mp);
    };
    if (workers == 1) {
        fill(0);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    fill(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    return g;
}

GramMatrix gram_matrix(Family f, int n, int lambda, const ParamSet& ps, std::size_t guard)
{
    MonoidParams mp = monoid_params_of(ps);
    auto halves = enumerate_half_diagrams(f, n, lambda, mp.K);
    if (halves.size() > guard)
        throw ResourceGuardError("Gram matrix dimension " + std::to_string(halves.size()) +
                                 " exceeds the guard " + std::to_string(guard));
    return gram_matrix(f, n, lambda, ps, halves);
}

RankReport exact_rank(const RationalMatrix& mat)
{
    RankReport rep;
    std::size_t rows = mat.size(), cols = rows ? mat[0].size() : 0;
    for (const auto& row : mat)
        if (row.size() != cols) throw PreconditionError("ragged matrix");
    bool square = rows == cols;

    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
    BigInt scale = 1;
    for (std::size_t i = 0; i < rows; ++i) {
        BigInt l = 1;
        for (const auto& x : mat[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = mat[i][j].get_num() * (l / mat[i][j].get_den());
        scale *= l;
    }

    BigInt prev = 1;
    int sign = 1;
    std::size_t k = 0;
    for (; k < std::min(rows, cols); ++k) {
        // full pivoting: smallest nonzero entry of the remaining block
        std::size_t pi = rows, pj = cols;
        std::size_t best = 0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                std::size_t sz = mpz_sizeinbase(a[i][j].get_mpz_t(), 2);
                if (pi == rows || sz < best) {
                    pi = i;
                    pj = j;
                    best = sz;
                }
            }
        if (pi == rows) break;
        if (pi != k) {
            std::swap(a[pi], a[k]);
            sign = -sign;
        }
        if (pj != k) {
            for (auto& row : a) std::swap(row[pj], row[k]);
            sign = -sign;
        }
        const BigInt& p = a[k][k];
        for (std::size_t i = k + 1; i < rows; ++i) {
            const BigInt aik = a[i][k];
            for (std::size_t j = k + 1; j < cols; ++j) {
                BigInt& x = a[i][j];
                if (aik == 0 || a[k][j] == 0) {
                    if (x == 0) continue;
                    x *= p;
                } else {
                    x = x * p - aik * a[k][j];
                }
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = p;
    }
    rep.rank = static_cast<long>(k);
    if (square) {
        if (rows == 0)
            rep.det = Rational(1);
        else if (k < rows)
            rep.det = Rational(0);
        else {
            Rational d{a[rows - 1][rows - 1] * sign, scale};
            d.canonicalize();
            rep.det = d;
        }
    }
    return rep;
}

Rational gram_det_closed_form_rook0(int n, const Rational& alpha0, const Rational& beta0,
                                    const Rational& gamma0)
{
    Rational out = 1;
    for (int i = 1; i <= n; ++i) {
        Rational f = pow(alpha0, i) - pow(gamma0, i);
        for (int k = 1; k < i; ++k)
            f -= Rational(binomial(i, k)) * (pow(alpha0, i - k) * pow(gamma0, k) - pow(gamma0, i));
        BigInt e = binomial(n, i) << (n - i);
        out *= pow(f, e.get_ui());
    }
    if (n > 0) {
        BigInt e = 1;
        for (int i = 1; i < n; ++i) e *= 3;
        out *= pow(gamma0 * gamma0 - beta0 * beta0, BigInt(e * n).get_ui());
    }
    return out;
}

bool gramcond_check(int n, int lambda, const Rational& alpha0, const Rational& beta0,
                    const Rational& gamma0)
{
    if (lambda < 0 || lambda > n) throw PreconditionError("lambda out of range");
    return gram_det_closed_form_rook0(n - lambda, alpha0, beta0, gamma0) != 0;
}

BigInt simple_dimension(Family f, int n, int lambda, const ParamSet& ps)
{
    if (f != Family::Rook && f != Family::PlanarRook)
        throw PreconditionError("simple dimensions are only available for Rook and PlanarRook");
    if (ps.q() != PolyQ::one_minus_power(1) || ps.K() != 1)
        throw PreconditionError("parameters must have constant numerators over q = 1 - T");
    if (!apex_set(f, n, zero_pattern_of(ps)).apexes.count(lambda))
        throw PreconditionError("lambda is not an apex");
    return exact_rank(gram_matrix(f, n, lambda, ps).entries).rank;
}

std::string matrix_to_csv(const RationalMatrix& mat)
{
    std::ostringstream out;
    for (const auto& row : mat) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << to_string(row[j]);
        out << '\n';
    }
    return out.str();
}

RationalMatrix matrix_from_csv(const std::string& text)
{
    RationalMatrix mat;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<Rational> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(parse_rational(cell));
        if (!mat.empty() && row.size() != mat[0].size()) throw ParseError("ragged CSV matrix");
        mat.push_back(std::move(row));
    }
    return mat;
}

} // namespace moebius
