#include "moebius/algebra.hpp"

#include "moebius/errors.hpp"

#include <json.hpp>

namespace moebius {

LinComb::LinComb(const Diagram& d, const Rational& c) : n_(d.n()), m_(d.m())
{
    add(normalize_mob(d), c);
}

void LinComb::add(const Diagram& d, const Rational& c)
{
    if (d.n() != n_ || d.m() != m_) throw PreconditionError("boundary mismatch in sum");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(d, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LinComb& LinComb::operator+=(const LinComb& other)
{
    for (const auto& [d, c] : other.terms_) add(d, c);
    return *this;
}

LinComb LinComb::scaled(const Rational& c) const
{
    LinComb out(n_, m_);
    for (const auto& [d, x] : terms_) out.add(d, x * c);
    return out;
}

Rational evaluate_closed(Decoration dec, const ParamSet& ps)
{
    dec = normalize_decoration(dec);
    return series_coeff(ps, static_cast<SeriesKind>(dec.mob), dec.h);
}

void add_reduced(LinComb& out, const Diagram& d, const Rational& c, const ParamSet& ps)
{
    if (c == 0) return;
    std::vector<Decoration> base;
    for (const auto& b : d.blocks()) base.push_back(b.dec);
    std::vector<std::pair<std::vector<Decoration>, Rational>> terms{{base, c}};
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i].h < ps.K()) continue;
        auto v = ps.handle_reduction(base[i].h);
        std::vector<std::pair<std::vector<Decoration>, Rational>> next;
        for (const auto& [decs, x] : terms)
            for (int j = 0; j < ps.K(); ++j) {
                if (v[j] == 0) continue;
                auto nd = decs;
                nd[i].h = j;
                next.emplace_back(std::move(nd), x * v[j]);
            }
        terms = std::move(next);
    }
    for (const auto& [decs, x] : terms) out.add(d.with_decorations(decs), x);
}

LinComb compose(const LinComb& f, const LinComb& g, const ParamSet& ps)
{
    if (g.m() != f.n())
        throw PreconditionError("boundary mismatch: " + std::to_string(g.m()) + " vs " +
                                std::to_string(f.n()));
    LinComb out(g.n(), f.m());
    for (const auto& [df, cf] : f.terms())
        for (const auto& [dg, cg] : g.terms()) {
            Stacked st = stack(df, dg);
            Rational c = cf * cg;
            for (const auto& dec : st.closed) {
                c *= evaluate_closed(dec, ps);
                if (c == 0) break;
            }
            add_reduced(out, normalize_mob(st.diagram), c, ps);
        }
    return out;
}

LinComb compose(const Diagram& f, const Diagram& g, const ParamSet& ps)
{
    return compose(LinComb(f), LinComb(g), ps);
}

LinComb tensor(const LinComb& f, const LinComb& g)
{
    LinComb out(f.n() + g.n(), f.m() + g.m());
    for (const auto& [df, cf] : f.terms())
        for (const auto& [dg, cg] : g.terms()) out.add(tensor(df, dg), cf * cg);
    return out;
}

LinComb star(const LinComb& f)
{
    LinComb out(f.m(), f.n());
    for (const auto& [d, c] : f.terms()) out.add(star(d), c);
    return out;
}

bool equal(const LinComb& x, const LinComb& y) { return x == y; }

EvaluationTable EvaluationTable::constant(int K, int v)
{
    EvaluationTable t;
    for (auto& row : t.values) row.assign(K, Rational(v));
    return t;
}

void EvaluationTable::validate(int K) const
{
    for (const auto& row : values) {
        if (static_cast<int>(row.size()) != K)
            throw PreconditionError("evaluation table rows must have K entries");
        for (const auto& v : row)
            if (v != 0 && v != 1) throw PreconditionError("evaluation table values must be 0 or 1");
    }
}

bool EvaluationTable::at(long h, long mob) const { return values.at(mob).at(h) == 1; }

MonoidValue monoid_compose(const Diagram& x, const Diagram& y, const MonoidParams& mp,
                           const EvaluationTable& evals)
{
    evals.validate(mp.K);
    Stacked st = stack(x, y);
    for (const auto& dec : st.closed) {
        Decoration d = normalize_decoration(dec);
        if (!evals.at(handle_reduce_monoid(d.h, mp), d.mob)) return std::nullopt;
    }
    return reduce_monoid(st.diagram, mp);
}

MonoidValue monoid_compose(const MonoidValue& x, const MonoidValue& y, const MonoidParams& mp,
                           const EvaluationTable& evals)
{
    if (!x || !y) return std::nullopt;
    return monoid_compose(*x, *y, mp, evals);
}

std::string lincomb_to_json_text(const LinComb& x)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [d, c] : x.terms()) arr.push_back({render_diagram(d), to_string(c)});
    return arr.dump();
}

} // namespace moebius
