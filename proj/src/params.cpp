#include "moebius/params.hpp"

#include "moebius/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <mutex>

namespace moebius {

PolyQ::PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    for (auto& c : coeffs_) c.canonicalize();
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyQ PolyQ::constant(const Rational& c) { return PolyQ(std::vector<Rational>{c}); }

PolyQ PolyQ::one_minus_power(int r)
{
    std::vector<Rational> c(static_cast<std::size_t>(r) + 1, Rational(0));
    c[0] = 1;
    c[static_cast<std::size_t>(r)] -= 1;
    return PolyQ(std::move(c));
}

Rational PolyQ::operator[](int i) const
{
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

class SeriesCache {
public:
    std::mutex mu;
    std::array<std::vector<Rational>, 3> series;
    std::vector<std::vector<Rational>> reductions;  // reductions[e - K]
};

ParamSet validate_params(PolyQ p_alpha, PolyQ p_beta, PolyQ p_gamma, PolyQ q,
                         ZeroAlphaPolicy policy)
{
    if (q[0] != 1) throw PreconditionError("q(0) must equal 1");
    if (p_alpha.is_zero() && !policy.allow)
        throw PreconditionError("p_alpha = 0 is not supported (N undefined)");

    ParamSet ps;
    ps.N_ = std::max(p_alpha.degree(), 0);
    ps.M_ = q.degree();
    ps.K_ = std::max(ps.N_ + 1, ps.M_);
    if (p_beta.degree() >= ps.K_)
        throw PreconditionError("deg p_beta must be < K = " + std::to_string(ps.K_));
    if (p_gamma.degree() >= ps.K_)
        throw PreconditionError("deg p_gamma must be < K = " + std::to_string(ps.K_));

    for (int i = 1; i <= ps.M_; ++i) {
        Rational qi = q[i];
        ps.handle_coeffs_.push_back(i % 2 == 0 ? qi : Rational(-qi));
        ps.recurrence_.push_back(-qi);
    }
    ps.p_[0] = std::move(p_alpha);
    ps.p_[1] = std::move(p_beta);
    ps.p_[2] = std::move(p_gamma);
    ps.q_ = std::move(q);
    ps.cache_ = std::make_shared<SeriesCache>();
    return ps;
}

Rational series_coeff(const ParamSet& ps, SeriesKind kind, long k)
{
    if (k < 0) throw PreconditionError("series index must be nonnegative");
    auto& cache = *ps.cache_;
    std::lock_guard lock(cache.mu);
    auto& xs = cache.series[static_cast<int>(kind)];
    const PolyQ& p = ps.p(kind);
    while (static_cast<long>(xs.size()) <= k) {
        long j = static_cast<long>(xs.size());
        Rational x = j > p.degree() ? Rational(0) : p[static_cast<int>(j)];
        for (int i = 1; i <= ps.M_ && i <= j; ++i) x -= ps.q_[i] * xs[static_cast<std::size_t>(j - i)];
        xs.push_back(x);
    }
    return xs[static_cast<std::size_t>(k)];
}

std::vector<Rational> ParamSet::handle_reduction(long e) const
{
    std::vector<Rational> out(static_cast<std::size_t>(K_), Rational(0));
    if (e < K_) {
        out[static_cast<std::size_t>(e)] = 1;
        return out;
    }
    std::lock_guard lock(cache_->mu);
    auto& red = cache_->reductions;
    auto unit_or_cached = [&](long x) {
        std::vector<Rational> v(static_cast<std::size_t>(K_), Rational(0));
        if (x < K_) {
            v[static_cast<std::size_t>(x)] = 1;
            return v;
        }
        return red[static_cast<std::size_t>(x - K_)];
    };
    while (static_cast<long>(red.size()) <= e - K_) {
        long x = K_ + static_cast<long>(red.size());
        std::vector<Rational> v(static_cast<std::size_t>(K_), Rational(0));
        for (int i = 1; i <= M_; ++i) {
            if (recurrence_[static_cast<std::size_t>(i - 1)] == 0) continue;
            auto lower = unit_or_cached(x - i);
            for (int j = 0; j < K_; ++j)
                v[static_cast<std::size_t>(j)] +=
                    recurrence_[static_cast<std::size_t>(i - 1)] * lower[static_cast<std::size_t>(j)];
        }
        red.push_back(std::move(v));
    }
    return red[static_cast<std::size_t>(e - K_)];
}

bool ParamSet::is_monomial(int* r) const
{
    if (M_ < 1 || q_[M_] != -1) return false;
    for (int i = 1; i < M_; ++i)
        if (q_[i] != 0) return false;
    if (r) *r = M_;
    return true;
}

ParamSet constant_params(const Rational& alpha0, const Rational& beta0, const Rational& gamma0)
{
    return validate_params(PolyQ::constant(alpha0), PolyQ::constant(beta0),
                           PolyQ::constant(gamma0), PolyQ::one_minus_power(1),
                           ZeroAlphaPolicy{true});
}

MonoidParams make_monoid_params(int K, int r)
{
    if (r < 1 || r % 2 == 0) throw PreconditionError("r must be a positive odd integer");
    if (K < r) throw PreconditionError("K must be >= r");
    return MonoidParams{K, r};
}

MonoidParams monoid_params_of(const ParamSet& ps)
{
    int r = 0;
    if (!ps.is_monomial(&r))
        throw PreconditionError("incompatible parameters: q must have the form 1 - T^r");
    if (r % 2 == 0) throw PreconditionError("incompatible parameters: r must be odd");
    return make_monoid_params(ps.K(), r);
}

long handle_reduce_monoid(long h, const MonoidParams& mp)
{
    if (h < mp.K) return h;
    long base = mp.K - mp.r;
    return base + (h - base) % mp.r;
}

namespace {

PolyQ poly_from_json(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) return PolyQ();
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    std::vector<Rational> c;
    for (const auto& v : arr) {
        if (v.is_string())
            c.push_back(parse_rational(v.get<std::string>()));
        else if (v.is_number_integer())
            c.push_back(Rational(BigInt(v.dump())));
        else
            throw ParseError(std::string("field '") + key +
                             "' must hold rational strings or integers");
    }
    return PolyQ(std::move(c));
}

nlohmann::ordered_json poly_to_json(const PolyQ& p)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    return arr;
}

} // namespace

ParamSet params_from_json_text(const std::string& text, ZeroAlphaPolicy policy)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("parameter file: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("parameter file must hold a JSON object");
    if (!j.contains("q")) throw ParseError("parameter file lacks 'q'");
    return validate_params(poly_from_json(j, "p_alpha"), poly_from_json(j, "p_beta"),
                           poly_from_json(j, "p_gamma"), poly_from_json(j, "q"), policy);
}

std::string params_to_json_text(const ParamSet& ps)
{
    nlohmann::ordered_json j;
    j["p_alpha"] = poly_to_json(ps.p_alpha());
    j["p_beta"] = poly_to_json(ps.p_beta());
    j["p_gamma"] = poly_to_json(ps.p_gamma());
    j["q"] = poly_to_json(ps.q());
    return j.dump();
}

} // namespace moebius
