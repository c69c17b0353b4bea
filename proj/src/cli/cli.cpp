#include "moebius/cli.hpp"

#include "moebius/algebra.hpp"
#include "moebius/cache.hpp"
#include "moebius/cells.hpp"
#include "moebius/errors.hpp"
#include "moebius/gram.hpp"
#include "moebius/msmall.hpp"
#include "moebius/params.hpp"
#include "moebius/repcount.hpp"
#include "moebius/semigroup.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace moebius::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDimsCheckGuard = 2'000'000;
constexpr std::size_t kJcellGuard = 250'000;
constexpr std::size_t kWreathGuard = 200'000;
constexpr int kGramDetMaxN = 5;

struct Options {
    std::string command;
    bool stable = false;
    std::string output = "json";
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    std::string params_file;
    std::string alpha0 = "1", beta0 = "1", gamma0 = "1";
    bool allow_zero_alpha = false;
    std::string family;
    int n = -1;
    int lambda = -1;
    int K = 0;  // 0: not given
    int r = 0;
    unsigned long seed = 1;
    std::string d1, d2, diagram;
    bool check = false;
    bool summary = false;
    std::string zero_pattern;
    std::string field = "char0";
    std::string lam = "1", sqrt_lam = "1";
    std::string matrix_file;
    std::string group;
    int wreath_lambda = 0;
};

struct Outcome {
    Outcome() = default;
    Outcome(Json r) : result(std::move(r)) {}

    Json result;
    bool ok = true;                     // false: a self-check failed, exit 5
    std::optional<std::string> csv;     // set when the command honours --output csv
    Json meta = Json::object();         // run-dependent facts, dropped with --stable
};

Json big_json(const BigInt& x)
{
    if (x.fits_slong_p()) return x.get_si();
    return to_string(x);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Json params_json(const ParamSet& ps)
{
    return Json::parse(params_to_json_text(ps));
}

ParamSet load_params(const Options& o, Json& input)
{
    if (!o.params_file.empty()) {
        auto ps = params_from_json_text(read_file(o.params_file), ZeroAlphaPolicy{o.allow_zero_alpha});
        input["params_file"] = o.params_file;
        input["params"] = params_json(ps);
        return ps;
    }
    auto ps = constant_params(parse_rational(o.alpha0), parse_rational(o.beta0), parse_rational(o.gamma0));
    input["params"] = params_json(ps);
    return ps;
}

Family need_family(const Options& o, Json& input)
{
    if (o.family.empty()) throw PreconditionError("--family is required");
    Family f = parse_family(o.family);
    input["family"] = family_name(f);
    return f;
}

int need_n(const Options& o, Json& input)
{
    if (o.n < 0) throw PreconditionError("--n must be given and nonnegative");
    input["n"] = o.n;
    return o.n;
}

int need_lambda(const Options& o, Json& input)
{
    if (o.lambda < 0) throw PreconditionError("--lambda must be given and nonnegative");
    input["lambda"] = o.lambda;
    return o.lambda;
}

Diagram need_diagram(const std::string& text, const char* flag, Json& input)
{
    if (text.empty()) throw PreconditionError(std::string(flag) + " is required");
    Diagram d = parse_diagram(text);
    input[flag + 2] = render_diagram(d);
    return d;
}

MonoidParams monoid_params_for(const Options& o, const Diagram& d, Json& input)
{
    long top = 0;
    for (const auto& b : d.blocks()) top = std::max(top, b.dec.h);
    int K = o.K > 0 ? o.K : static_cast<int>(top) + 1;
    int r = o.r > 0 ? o.r : 1;
    auto mp = make_monoid_params(K, r);
    input["K"] = mp.K;
    input["r"] = mp.r;
    return mp;
}

MonoidParams need_monoid_params(const Options& o, Json& input)
{
    if (o.K <= 0 || o.r <= 0) throw PreconditionError("--K and --r are required");
    auto mp = make_monoid_params(o.K, o.r);
    input["K"] = mp.K;
    input["r"] = mp.r;
    return mp;
}

std::optional<std::filesystem::path> cache_dir_of(const Options& o)
{
    if (o.no_cache) return std::nullopt;
    return resolve_cache_dir(o.cache_dir);
}

std::string zero_pattern_name(ZeroPattern z)
{
    return z == ZeroPattern::all_zero ? "all-zero" : "some-nonzero";
}

ZeroPattern parse_zero_pattern(const std::string& s)
{
    if (s == "all-zero") return ZeroPattern::all_zero;
    if (s == "some-nonzero") return ZeroPattern::some_nonzero;
    throw ParseError("zero pattern must be all-zero or some-nonzero, got '" + s + "'");
}

std::string render_wreath(const WreathElem& w)
{
    std::string s = "(";
    for (int i = 0; i < w.lambda(); ++i) s += (i ? "," : "") + render_melem(w.strands[i]);
    s += ";";
    for (int i = 0; i < w.lambda(); ++i) s += (i ? " " : "") + std::to_string(w.perm[i] + 1);
    return s + ")";
}

Json strings_of(const std::vector<std::vector<int>>& classes,
                const std::function<std::string(int)>& name)
{
    Json out = Json::array();
    for (const auto& c : classes) {
        Json row = Json::array();
        for (int x : c) row.push_back(name(x));
        out.push_back(row);
    }
    return out;
}

Json matrix_json(const RationalMatrix& m)
{
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        out.push_back(r);
    }
    return out;
}

// ---- commands ----

Outcome cmd_compose(const Options& o, Json& input)
{
    Diagram a = need_diagram(o.d1, "--d1", input);
    Diagram b = need_diagram(o.d2, "--d2", input);
    ParamSet ps = load_params(o, input);
    LinComb x = compose(a, b, ps);
    return {Json{{"n", x.n()}, {"m", x.m()}, {"terms", Json::parse(lincomb_to_json_text(x))}}};
}

Outcome cmd_normalize(const Options& o, Json& input)
{
    Diagram d = need_diagram(o.diagram, "--diagram", input);
    return {Json{{"diagram", render_diagram(normalize_mob(d))}}};
}

Outcome cmd_tensor(const Options& o, Json& input)
{
    Diagram a = need_diagram(o.d1, "--d1", input);
    Diagram b = need_diagram(o.d2, "--d2", input);
    return {Json{{"diagram", render_diagram(tensor(a, b))}}};
}

Outcome cmd_star(const Options& o, Json& input)
{
    Diagram d = need_diagram(o.diagram, "--diagram", input);
    return {Json{{"diagram", render_diagram(star(normalize_mob(d)))}}};
}

Outcome cmd_factorize(const Options& o, Json& input)
{
    Diagram d = need_diagram(o.diagram, "--diagram", input);
    auto mp = monoid_params_for(o, d, input);
    auto f = factorize(d, mp);
    Diagram back = recompose(f);
    Diagram expected = reduce_monoid(normalize_mob(d), mp);
    Outcome res{Json{{"lambda", f.lambda_ts},
                     {"top", render_diagram(f.top)},
                     {"middle", render_wreath(f.middle)},
                     {"bottom", render_diagram(f.bottom)},
                     {"recomposed", render_diagram(back)},
                     {"roundtrip", back == expected}}};
    res.ok = back == expected;
    return res;
}

Outcome cmd_member(const Options& o, Json& input)
{
    Diagram d = need_diagram(o.diagram, "--diagram", input);
    if (!o.family.empty()) {
        Family f = need_family(o, input);
        return {Json{{"member", is_member(d, f)}}};
    }
    Json fams = Json::object();
    for (Family f : all_families()) fams[family_name(f)] = is_member(d, f);
    return {Json{{"planar", is_planar(d)}, {"families", fams}}};
}

Outcome cmd_dims(const Options& o, Json& input)
{
    Family f = need_family(o, input);
    int n = need_n(o, input);
    int K = o.K > 0 ? o.K : 1;
    input["K"] = K;
    input["check"] = o.check;

    std::vector<std::pair<int, BigInt>> rows;
    for (int lambda = n; lambda >= 0; --lambda)
        if (lambda_admissible(f, n, lambda)) rows.emplace_back(lambda, dim_left_cell(f, n, lambda, K));

    if (o.check) {
        BigInt total = 0;
        for (const auto& [lambda, c] : rows) total += c;
        if (total > BigInt(static_cast<unsigned long>(kDimsCheckGuard)))
            throw ResourceGuardError("enumeration check would visit " + to_string(total) +
                                     " half diagrams (guard " + std::to_string(kDimsCheckGuard) + ")");
    }

    Outcome res;
    Json table = Json::array();
    std::string csv = o.check ? "lambda,closed_form,enumerated\n" : "lambda,count\n";
    auto dir = cache_dir_of(o);
    Json cache = Json::array();
    for (const auto& [lambda, c] : rows) {
        Json row{{"lambda", lambda}, {"count", big_json(c)}};
        csv += std::to_string(lambda) + "," + to_string(c);
        if (o.check) {
            CacheStatus st;
            auto halves = cached_half_diagrams(f, n, lambda, K, dir, &st);
            BigInt enumerated = static_cast<unsigned long>(halves.size());
            row["enumerated"] = big_json(enumerated);
            row["match"] = enumerated == c;
            if (enumerated != c) res.ok = false;
            csv += "," + to_string(enumerated);
            cache.push_back(cache_status_name(st));
        }
        csv += "\n";
        table.push_back(row);
    }
    res.result = Json{{"rows", table}};
    if (o.check) {
        res.result["all_match"] = res.ok;
        res.meta["cache"] = cache;
    }
    res.csv = csv;
    return res;
}

Outcome cmd_cells(const Options& o, Json& input)
{
    Family f = need_family(o, input);
    if (!o.diagram.empty()) {
        Diagram d = need_diagram(o.diagram, "--diagram", input);
        auto mp = monoid_params_for(o, d, input);
        auto c = cell_of(d, mp, f);
        auto fac = factorize(d, mp);
        return {Json{{"lambda", c.lambda_ts},
                     {"left_index", c.left_index},
                     {"right_index", c.right_index},
                     {"bottom", render_diagram(fac.bottom)},
                     {"top_star", render_diagram(star(fac.top))}}};
    }
    int n = need_n(o, input);
    auto mp = make_monoid_params(o.K > 0 ? o.K : 1, o.r > 0 ? o.r : 1);
    input["K"] = mp.K;
    input["r"] = mp.r;
    auto cmp = compare_cells(f, n, mp);
    Outcome res{Json{{"elements", cmp.element_count},
                     {"j_classes", cmp.j_count},
                     {"j_match", cmp.j_match},
                     {"l_match", cmp.l_match},
                     {"r_match", cmp.r_match},
                     {"lambda_constant_on_j", cmp.lambda_constant_on_j},
                     {"equal_l_sizes", cmp.equal_l_sizes},
                     {"equal_r_sizes", cmp.equal_r_sizes},
                     {"ok", cmp.ok()}}};
    res.ok = cmp.ok();
    return res;
}

ZeroPattern zero_pattern_for(const Options& o, Json& input)
{
    ZeroPattern z;
    if (!o.zero_pattern.empty()) {
        z = parse_zero_pattern(o.zero_pattern);
    } else {
        auto ps = load_params(o, input);
        z = zero_pattern_of(ps);
    }
    input["zero_pattern"] = zero_pattern_name(z);
    return z;
}

Outcome cmd_apex(const Options& o, Json& input)
{
    Family f = need_family(o, input);
    int n = need_n(o, input);
    auto a = apex_set(f, n, zero_pattern_for(o, input));
    return {Json{{"apexes", std::vector<int>(a.apexes.begin(), a.apexes.end())}}};
}

Outcome cmd_idempotents(const Options& o, Json& input)
{
    Family f = need_family(o, input);
    int n = need_n(o, input);
    ParamSet ps = load_params(o, input);
    auto zp = zero_pattern_of(ps);
    auto apexes = apex_set(f, n, zp).apexes;
    std::vector<int> lambdas;
    if (o.lambda >= 0) {
        check_lambda_admissible(f, n, o.lambda);
        input["lambda"] = o.lambda;
        lambdas.push_back(o.lambda);
    } else {
        for (int l = n; l >= 0; --l)
            if (lambda_admissible(f, n, l)) lambdas.push_back(l);
    }
    Outcome res;
    Json rows = Json::array();
    for (int l : lambdas) {
        BigInt side = dim_left_cell(f, n, l, ps.K());
        if (side * side > BigInt(static_cast<unsigned long>(kJcellGuard)))
            throw ResourceGuardError("J-cell at lambda = " + std::to_string(l) + " too large");
        auto found = find_strict_idempotent(jcell_elements(f, n, l, ps.K()), ps);
        bool apex = apexes.count(l) > 0;
        Json row{{"lambda", l}, {"found", found.has_value()}, {"apex", apex}};
        if (found) {
            row["element"] = render_diagram(found->element);
            row["scalar"] = to_string(found->scalar);
        }
        if (found.has_value() != apex) res.ok = false;
        rows.push_back(row);
    }
    res.result = Json{{"zero_pattern", zero_pattern_name(zp)}, {"rows", rows}, {"agrees_with_apex_set", res.ok}};
    return res;
}

Outcome cmd_monoid_m(const Options& o, Json& input)
{
    auto mp = need_monoid_params(o, input);
    auto rep = m_cell_structure(mp);
    auto elems = m_elements(mp);
    auto name = [&](const MElem& x) { return render_melem(x); };
    Json jcells = Json::array();
    for (const auto& c : rep.j_cells) {
        Json row = Json::array();
        for (const auto& x : c) row.push_back(name(x));
        jcells.push_back(row);
    }
    Json idem = Json::array();
    for (const auto& x : rep.idempotents) idem.push_back(name(x));
    Outcome res{Json{{"size", static_cast<int>(elems.size())},
                     {"degenerate", rep.degenerate},
                     {"j_cells", jcells},
                     {"idempotents", idem},
                     {"predicted_idempotent_r", name(rep.predicted_idempotent_r)},
                     {"predicted_idempotent_2r", name(rep.predicted_idempotent_2r)},
                     {"checks",
                      Json{{"singletons", rep.singletons_ok},
                           {"j_r", rep.j_r_ok},
                           {"j_2r", rep.j_2r_ok},
                           {"idempotents", rep.idempotents_ok},
                           {"cyclic_r", rep.cyclic_r_ok},
                           {"cyclic_2r", rep.cyclic_2r_ok}}},
                     {"ok", rep.all_ok()}}};
    res.ok = rep.all_ok();
    return res;
}

ClassPartition ordinary_conjugacy(const CayleyMonoid& g)
{
    std::vector<int> inv(g.size, -1);
    for (int a = 0; a < g.size; ++a)
        for (int b = 0; b < g.size; ++b)
            if (g(a, b) == g.identity) inv[a] = b;
    std::vector<int> label(g.size, -1);
    int next = 0;
    for (int a = 0; a < g.size; ++a) {
        if (label[a] >= 0) continue;
        for (int h = 0; h < g.size; ++h) label[g(g(h, a), inv[h])] = next;
        ++next;
    }
    return partition_from_labels(label);
}

CayleyMonoid parse_group(const std::string& s)
{
    if (s.size() < 2) throw ParseError("group must be s<k> or z<k>");
    int k = 0;
    try {
        k = std::stoi(s.substr(1));
    } catch (const std::exception&) {
        throw ParseError("group must be s<k> or z<k>");
    }
    char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    if (c == 's') return symmetric_group(k);
    if (c == 'z') return cyclic_group(k);
    throw ParseError("group must be s<k> or z<k>");
}

Outcome cmd_conjugacy(const Options& o, Json& input)
{
    if (!o.group.empty()) {
        input["group"] = o.group;
        auto g = parse_group(o.group);
        auto classes = generalized_conjugacy_classes(g);
        auto ordinary = ordinary_conjugacy(g);
        bool same = classes.class_of == ordinary.class_of;
        auto name = [](int x) { return std::to_string(x); };
        Outcome res{Json{{"size", g.size},
                         {"count", classes.count()},
                         {"classes", strings_of(classes.classes, name)},
                         {"ordinary_count", ordinary.count()},
                         {"matches_ordinary", same}}};
        res.ok = same;
        return res;
    }
    auto mp = need_monoid_params(o, input);
    if (o.wreath_lambda > 0) {
        input["wreath_lambda"] = o.wreath_lambda;
        std::vector<WreathElem> elems;
        auto classes = wreath_conjugacy_classes(mp, o.wreath_lambda, &elems);
        auto name = [&](int x) { return render_wreath(elems[x]); };
        return {Json{{"size", static_cast<int>(elems.size())},
                     {"count", classes.count()},
                     {"classes", strings_of(classes.classes, name)}}};
    }
    auto elems = m_elements(mp);
    auto classes = generalized_conjugacy_classes(m_monoid(mp));
    auto name = [&](int x) { return render_melem(elems[x]); };
    Outcome res{Json{{"size", static_cast<int>(elems.size())},
                     {"count", classes.count()},
                     {"classes", strings_of(classes.classes, name)}}};
    if (!mp.degenerate()) {
        int expected = 1 + 3 * mp.r;
        res.result["expected"] = expected;
        res.result["matches"] = classes.count() == expected;
        res.ok = classes.count() == expected;
    }
    return res;
}

Outcome cmd_wreath_types(const Options& o, Json& input)
{
    auto mp = need_monoid_params(o, input);
    int lambda = need_lambda(o, input);
    auto base = m_monoid(mp);
    auto classes = generalized_conjugacy_classes(base);
    auto wm = wreath_monoid(mp, lambda, false, kWreathGuard);
    std::map<TypeMatrix, int> fiber;
    std::vector<int> type_label;
    for (const auto& w : wm.elements) {
        auto t = wreath_type(w, classes.class_of, classes.count(), mp);
        auto [it, inserted] = fiber.try_emplace(t, static_cast<int>(fiber.size()));
        type_label.push_back(it->second);
    }
    BigInt predicted = count_types(lambda, classes.count());
    bool types_ok = BigInt(static_cast<unsigned long>(fiber.size())) == predicted;
    Outcome res{Json{{"elements", static_cast<int>(wm.elements.size())},
                     {"class_count", classes.count()},
                     {"distinct_types", static_cast<int>(fiber.size())},
                     {"predicted", big_json(predicted)},
                     {"match", types_ok}}};
    res.ok = types_ok;
    if (lambda <= 2 && base.size <= 6) {
        std::vector<WreathElem> elems;
        auto conj = wreath_conjugacy_classes(mp, lambda, &elems);
        std::map<WreathElem, int> type_of;
        for (std::size_t i = 0; i < wm.elements.size(); ++i) type_of[wm.elements[i]] = type_label[i];
        std::vector<int> labels;
        for (const auto& e : elems) labels.push_back(type_of.at(e));
        bool fibers = partition_from_labels(labels).class_of == conj.class_of;
        res.result["conjugacy_classes"] = conj.count();
        res.result["fibers_match"] = fibers;
        res.ok = res.ok && fibers;
    }
    return res;
}

Outcome cmd_count_simples(const Options& o, Json& input)
{
    SimpleCountQuery q;
    q.family = need_family(o, input);
    q.n = need_n(o, input);
    q.lambda_ts = need_lambda(o, input);
    q.field = parse_field(o.field);
    q.r = o.r > 0 ? o.r : 1;
    q.zero_pattern = o.zero_pattern.empty() ? ZeroPattern::some_nonzero : parse_zero_pattern(o.zero_pattern);
    input["field"] = field_name(q.field);
    input["r"] = q.r;
    input["zero_pattern"] = zero_pattern_name(q.zero_pattern);
    auto c = count_simples(q);
    return {Json{{"count", big_json(c.count)}, {"s", c.s}, {"upper_bound", c.upper_bound}}};
}

Outcome cmd_gram(const Options& o, Json& input)
{
    Family f = need_family(o, input);
    int n = need_n(o, input);
    int lambda = need_lambda(o, input);
    ParamSet ps = load_params(o, input);
    CacheStatus st;
    auto halves = cached_half_diagrams(f, n, lambda, ps.K(), cache_dir_of(o), &st);
    auto g = gram_matrix(f, n, lambda, ps, halves);
    auto rep = exact_rank(g.entries);
    Outcome res;
    res.result["size"] = static_cast<int>(g.entries.size());
    res.result["rank"] = rep.rank;
    res.result["det"] = rep.det ? Json(to_string(*rep.det)) : Json(nullptr);
    if (!o.summary) {
        Json rows = Json::array(), cols = Json::array();
        for (const auto& h : g.row_labels) rows.push_back(render_diagram(h.base));
        for (const auto& h : g.col_labels) cols.push_back(render_diagram(h.base));
        res.result["row_labels"] = rows;
        res.result["col_labels"] = cols;
        res.result["matrix"] = matrix_json(g.entries);
    }
    res.csv = matrix_to_csv(g.entries);
    res.meta["cache"] = cache_status_name(st);
    return res;
}

Outcome cmd_rank(const Options& o, Json& input)
{
    if (o.matrix_file.empty()) throw PreconditionError("--matrix is required");
    input["matrix"] = o.matrix_file;
    auto m = matrix_from_csv(read_file(o.matrix_file));
    auto rep = exact_rank(m);
    return {Json{{"rows", static_cast<int>(m.size())},
                 {"rank", rep.rank},
                 {"det", rep.det ? Json(to_string(*rep.det)) : Json(nullptr)}}};
}

Outcome cmd_gram_det(const Options& o, Json& input)
{
    int n = need_n(o, input);
    if (n > kGramDetMaxN)
        throw ResourceGuardError("gram-det brute force limited to n <= " + std::to_string(kGramDetMaxN));
    Rational a = parse_rational(o.alpha0), b = parse_rational(o.beta0), c = parse_rational(o.gamma0);
    input["alpha0"] = to_string(a);
    input["beta0"] = to_string(b);
    input["gamma0"] = to_string(c);
    auto closed = gram_det_closed_form_rook0(n, a, b, c);
    auto g = gram_matrix(Family::Rook, n, 0, constant_params(a, b, c));
    auto rep = exact_rank(g.entries);
    Rational det = rep.det ? *rep.det : Rational(0);
    Outcome res{Json{{"size", static_cast<int>(g.entries.size())},
                     {"determinant", to_string(det)},
                     {"closed_form", to_string(closed)},
                     {"match", det == closed}}};
    res.ok = det == closed;
    return res;
}

Outcome cmd_deligne(const Options& o, Json& input)
{
    Rational a = parse_rational(o.alpha0), b = parse_rational(o.beta0), c = parse_rational(o.gamma0);
    Rational lam = parse_rational(o.lam), sq = parse_rational(o.sqrt_lam);
    input["alpha0"] = to_string(a);
    input["beta0"] = to_string(b);
    input["gamma0"] = to_string(c);
    input["lam"] = to_string(lam);
    input["sqrt_lam"] = to_string(sq);
    auto d = deligne_parameters(a, b, c, lam, sq);
    return {Json{{"delta", to_string(d.delta)},
                 {"delta_plus", to_string(d.delta_plus)},
                 {"delta_minus", to_string(d.delta_minus)}}};
}

Diagram random_diagram(Family f, int n, int K, std::mt19937_64& rng)
{
    auto shapes = enumerate_shapes(f, n, n);
    std::uniform_int_distribution<std::size_t> pick(0, shapes.size() - 1);
    const Diagram& s = shapes[pick(rng)];
    std::uniform_int_distribution<long> h(0, K), mob(0, 2);
    std::vector<Decoration> decs;
    for (std::size_t i = 0; i < s.blocks().size(); ++i) decs.push_back({h(rng), mob(rng)});
    return s.with_decorations(decs);
}

Outcome cmd_selftest(const Options& o, Json& input)
{
    input["seed"] = o.seed;
    std::vector<std::pair<std::string, std::function<bool()>>> checks;
    checks.emplace_back("rook_n1_gram", [] {
        auto g = gram_matrix(Family::Rook, 1, 0, constant_params(2, 0, 1));
        RationalMatrix want{{2, 0, 1}, {0, 1, 0}, {1, 0, 1}};
        auto rep = exact_rank(g.entries);
        return g.entries == want && rep.rank == 3 && rep.det && *rep.det == 1;
    });
    checks.emplace_back("tl_dimension_anchor",
                        [] { return dim_left_cell(Family::TemperleyLieb, 3, 1, 2) == 12; });
    checks.emplace_back("monoid_m_cells", [] {
        for (auto [K, r] : std::vector<std::pair<int, int>>{{2, 1}, {4, 1}, {4, 3}, {6, 5}, {8, 3}})
            if (!m_cell_structure(make_monoid_params(K, r)).all_ok()) return false;
        return true;
    });
    checks.emplace_back("monoid_m_conjugacy", [] {
        for (auto [K, r] : std::vector<std::pair<int, int>>{{2, 1}, {4, 3}})
            if (generalized_conjugacy_classes(m_monoid(make_monoid_params(K, r))).count() != 1 + 3 * r)
                return false;
        return generalized_conjugacy_classes(symmetric_group(3)).count() == 3;
    });
    checks.emplace_back("deligne_example", [] {
        auto d = deligne_parameters(19, 4, 10, 1, 1);
        return d.delta == 9 && d.delta_plus == 7 && d.delta_minus == 3;
    });
    checks.emplace_back("associativity", [seed = o.seed] {
        std::mt19937_64 rng(seed);
        auto ps = validate_params(PolyQ({1, 2}), PolyQ({3}), PolyQ({1, -1}), PolyQ({1, 0, -1}));
        for (Family f : all_families()) {
            for (int i = 0; i < 20; ++i) {
                Diagram a = random_diagram(f, 2, ps.K(), rng), b = random_diagram(f, 2, ps.K(), rng),
                        c = random_diagram(f, 2, ps.K(), rng);
                LinComb la(a), lb(b), lc(c);
                if (!equal(compose(compose(la, lb, ps), lc, ps), compose(la, compose(lb, lc, ps), ps)))
                    return false;
            }
        }
        return true;
    });
    checks.emplace_back("star_anti_involution", [seed = o.seed] {
        std::mt19937_64 rng(seed + 1);
        auto ps = constant_params(2, 3, 5);
        for (int i = 0; i < 50; ++i) {
            Diagram a = random_diagram(Family::Partition, 2, 1, rng), b = random_diagram(Family::Partition, 2, 1, rng);
            LinComb la(a), lb(b);
            if (!equal(star(compose(la, lb, ps)), compose(star(lb), star(la), ps))) return false;
        }
        return true;
    });
    checks.emplace_back("rook_tl_cells", [] {
        for (Family f : {Family::Rook, Family::TemperleyLieb})
            for (int n = 1; n <= 2; ++n)
                if (!compare_cells(f, n, make_monoid_params(1, 1)).ok()) return false;
        return true;
    });

    Outcome res;
    Json rows = Json::array();
    int passed = 0;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        std::string error;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            error = e.what();
        }
        Json row{{"name", name}, {"ok", ok}};
        if (!error.empty()) row["error"] = error;
        rows.push_back(row);
        passed += ok;
    }
    res.ok = passed == static_cast<int>(checks.size());
    res.result = Json{{"checks", rows}, {"passed", passed}, {"failed", static_cast<int>(checks.size()) - passed}};
    return res;
}

using Handler = Outcome (*)(const Options&, Json&);

const std::map<std::string, Handler>& handlers()
{
    static const std::map<std::string, Handler> table{
        {"compose", cmd_compose},
        {"normalize", cmd_normalize},
        {"tensor", cmd_tensor},
        {"star", cmd_star},
        {"factorize", cmd_factorize},
        {"member", cmd_member},
        {"dims", cmd_dims},
        {"cells", cmd_cells},
        {"apex", cmd_apex},
        {"idempotents", cmd_idempotents},
        {"monoid-m", cmd_monoid_m},
        {"conjugacy", cmd_conjugacy},
        {"wreath-types", cmd_wreath_types},
        {"count-simples", cmd_count_simples},
        {"gram", cmd_gram},
        {"rank", cmd_rank},
        {"gram-det", cmd_gram_det},
        {"deligne", cmd_deligne},
        {"selftest", cmd_selftest},
    };
    return table;
}

void add_params_flags(CLI::App* sub, Options& o)
{
    sub->add_option("--params", o.params_file, "JSON parameter file");
    sub->add_option("--alpha0", o.alpha0, "constant alpha (default 1)");
    sub->add_option("--beta0", o.beta0, "constant beta (default 1)");
    sub->add_option("--gamma0", o.gamma0, "constant gamma (default 1)");
    sub->add_flag("--allow-zero-alpha", o.allow_zero_alpha, "accept p_alpha = 0 in a params file");
}

void build(CLI::App& app, Options& o)
{
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--stable", o.stable, "omit timing and cache metadata");
    app.add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--cache-dir", o.cache_dir, "enumeration cache directory");
    app.add_flag("--no-cache", o.no_cache, "disable the enumeration cache");
    app.add_option("--seed", o.seed, "seed for randomized checks");

    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&o, name] { o.command = name; });
        return s;
    };
    auto fam = [&](CLI::App* s) { s->add_option("--family", o.family, "diagram family"); };
    auto n = [&](CLI::App* s) { s->add_option("--n", o.n, "bottom boundary size"); };
    auto lam = [&](CLI::App* s) { s->add_option("--lambda", o.lambda, "through strands"); };
    auto kr = [&](CLI::App* s) {
        s->add_option("--K", o.K, "handle bound");
        s->add_option("--r", o.r, "handle period");
    };
    auto diag = [&](CLI::App* s) { s->add_option("--diagram", o.diagram, "diagram literal"); };
    auto pair = [&](CLI::App* s) {
        s->add_option("--d1", o.d1, "upper diagram literal");
        s->add_option("--d2", o.d2, "lower diagram literal");
    };

    auto* s = sub("compose", "compose d1 on top of d2");
    pair(s);
    add_params_flags(s, o);
    diag(sub("normalize", "canonical Moebius normal form"));
    pair(sub("tensor", "juxtapose d1 and d2"));
    diag(sub("star", "vertical flip"));
    s = sub("factorize", "top, middle and bottom factors");
    diag(s);
    kr(s);
    s = sub("member", "family membership");
    diag(s);
    fam(s);
    s = sub("dims", "left cell sizes per lambda");
    fam(s);
    n(s);
    kr(s);
    s->add_flag("--check", o.check, "cross-check against enumeration");
    s = sub("cells", "cell coordinates or cell comparison");
    fam(s);
    n(s);
    kr(s);
    diag(s);
    s = sub("apex", "apex set");
    fam(s);
    n(s);
    s->add_option("--zero-pattern", o.zero_pattern, "all-zero or some-nonzero");
    add_params_flags(s, o);
    s = sub("idempotents", "strict idempotents per J-cell");
    fam(s);
    n(s);
    lam(s);
    add_params_flags(s, o);
    kr(sub("monoid-m", "Green's cells of M(K,r)"));
    s = sub("conjugacy", "generalized conjugacy classes");
    kr(s);
    s->add_option("--wreath-lambda", o.wreath_lambda, "use M(K,r) wreath S_lambda");
    s->add_option("--group", o.group, "s<k> or z<k>");
    s = sub("wreath-types", "type matrices over M(K,r) wreath S_lambda");
    kr(s);
    lam(s);
    s = sub("count-simples", "number of simple modules at an apex");
    fam(s);
    n(s);
    lam(s);
    s->add_option("--field", o.field, "char0, rationals or prime:p");
    s->add_option("--r", o.r, "handle period");
    s->add_option("--zero-pattern", o.zero_pattern, "all-zero or some-nonzero");
    s = sub("gram", "Gram matrix of a cell module");
    fam(s);
    n(s);
    lam(s);
    add_params_flags(s, o);
    s->add_flag("--summary", o.summary, "omit the matrix and labels");
    s = sub("rank", "exact rank of a CSV matrix");
    s->add_option("--matrix", o.matrix_file, "CSV file of rationals");
    s = sub("gram-det", "rook lambda=0 determinant against its closed form");
    n(s);
    add_params_flags(s, o);
    s = sub("deligne", "Deligne parameters");
    add_params_flags(s, o);
    s->add_option("--lam", o.lam, "scale");
    s->add_option("--sqrt-lam", o.sqrt_lam, "square root of the scale");
    sub("selftest", "quick internal checks");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Moebius strip diagram algebras"};
    app.name("moebius");
    build(app, o);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << '\n';
        return ParseError("").exit_code();
    }

    auto start = std::chrono::steady_clock::now();
    try {
        Json input = Json::object();
        Outcome res = handlers().at(o.command)(o, input);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (o.output == "csv") {
            if (!res.csv) throw PreconditionError("--output csv is not available for " + o.command);
            out << *res.csv;
        } else {
            Json doc;
            doc["format_version"] = kFormatVersion;
            doc["command"] = o.command;
            doc["input"] = input;
            doc["result"] = res.result;
            if (!o.stable) {
                doc["timing_ms"] = ms;
                if (!res.meta.empty()) doc["meta"] = res.meta;
            }
            out << doc.dump(2) << '\n';
        }
        if (!res.ok) {
            err << "error: self-check failed in " << o.command << '\n';
            return InvariantError("").exit_code();
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return InvariantError("").exit_code();
    }
}

} // namespace moebius::cli
