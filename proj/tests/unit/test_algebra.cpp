#include "moebius/algebra.hpp"
#include "moebius/errors.hpp"

#include <doctest.h>

using namespace moebius;

namespace {

PolyQ poly(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return PolyQ(v);
}

// beta = (1 + T) / (1 - T - T^2): beta_0 = 1, beta_1 = 2.
ParamSet fib_params()
{
    return validate_params(poly({3, 1}), poly({1, 1}), poly({2}), poly({1, -1, -1}));
}

LinComb single(const char* lit, const Rational& c = 1) { return LinComb(parse_diagram(lit), c); }

} // namespace

TEST_SUITE("algebra")
{
    TEST_CASE("closed components evaluate through the series")
    {
        auto ps = fib_params();
        CHECK(evaluate_closed({0, 0}, ps) == 3);
        CHECK(evaluate_closed({1, 1}, ps) == 2);
        CHECK(evaluate_closed({0, 3}, ps) == 2);
        CHECK(evaluate_closed({2, 2}, ps) == series_coeff(ps, SeriesKind::gamma, 2));
    }

    TEST_CASE("partition examples compose to single diagrams")
    {
        auto ps = constant_params(5, 7, 11);
        auto ab = compose(parse_diagram("6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3,3'}[0,0]|{6,1',4',6'}[0,0]|{5'}[0,0]"),
                          parse_diagram("6;6;{1,1'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,2',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]"),
                          ps);
        CHECK(ab == single("6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,1',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]"));

        // 2 -> 3 on top of 4 -> 2; the middle node 2 closes up into a loop.
        auto upper = parse_diagram("2;3;{1,1',2'}[0,0]|{2}[0,0]|{3'}[0,0]");
        auto lower = parse_diagram("4;2;{1,1'}[0,0]|{2,4}[0,0]|{3}[0,0]|{2'}[0,0]");
        auto want = "4;3;{1,1',2'}[0,0]|{2,4}[0,0]|{3}[0,0]|{3'}[0,0]";
        CHECK(compose(upper, lower, constant_params(1, 1, 1)) == single(want));
        CHECK(compose(upper, lower, ps) == single(want, 5));
    }

    TEST_CASE("identity composition")
    {
        auto ps = fib_params();
        CHECK(compose(Diagram::identity(3), Diagram::identity(3), ps) == LinComb(Diagram::identity(3)));
        auto d = single("2;2;{1,2'}[1,2]|{2,1'}[0,1]");
        CHECK(compose(LinComb(Diagram::identity(2)), d, ps) == d);
        CHECK(compose(d, LinComb(Diagram::identity(2)), ps) == d);
    }

    TEST_CASE("loops")
    {
        auto cap = parse_diagram("1;0;{1}[0,0]");
        auto cup = parse_diagram("0;1;{1'}[0,0]");
        CHECK(compose(cap, cup, constant_params(2, 0, 0)) == LinComb(Diagram::empty(), 2));
        auto ps = fib_params();
        CHECK(compose(parse_diagram("1;0;{1}[0,2]"), parse_diagram("0;1;{1'}[0,1]"), ps) ==
              LinComb(Diagram::empty(), 2));
        CHECK(compose(parse_diagram("1;0;{1}[0,2]"), parse_diagram("0;1;{1'}[0,0]"), ps) ==
              LinComb(Diagram::empty(), 2));
    }

    TEST_CASE("Temperley-Lieb relation")
    {
        auto ps = constant_params(1, 1, 1);
        auto e1 = single("3;3;{1,2}[0,0]|{1',2'}[0,0]|{3,3'}[0,0]");
        auto e2 = single("3;3;{1,1'}[0,0]|{2,3}[0,0]|{2',3'}[0,0]");
        CHECK(compose(compose(e1, e2, ps), e1, ps) == e1);
        CHECK(compose(e1, e1, constant_params(4, 1, 1)) == e1.scaled(4));
    }

    TEST_CASE("handle exponents reduce below K")
    {
        auto root5 = validate_params(poly({1}), poly({}), poly({}), poly({1, 0, 0, 0, 0, -1}));
        auto strand = [](long h) { return Diagram::identity(1).with_decorations({{h, 0}}); };
        CHECK(compose(Diagram::identity(1), strand(5), root5) == LinComb(strand(0)));
        CHECK(compose(strand(3), strand(4), root5) == LinComb(strand(2)));

        // h^2 = h + h^0 over q = 1 - T - T^2.
        auto ps = fib_params();
        LinComb want(1, 1);
        want.add(strand(1), 1);
        want.add(strand(0), 1);
        CHECK(compose(strand(1), strand(1), ps) == want);
    }

    TEST_CASE("boundary mismatch")
    {
        CHECK_THROWS_AS(compose(Diagram::identity(2), Diagram::identity(3), constant_params(1, 1, 1)),
                        PreconditionError);
    }

    TEST_CASE("equality of linear combinations")
    {
        auto x = single("1;1;{1,1'}[0,0]");
        auto y = x;
        y.add(parse_diagram("1;1;{1}[0,0]|{1'}[0,0]"), 0);
        CHECK(equal(x, y));
        CHECK_FALSE(equal(x, single("1;1;{1,1'}[0,1]")));
        auto z = x;
        z += x.scaled(-1);
        CHECK(z.is_zero());
    }

    TEST_CASE("tensor and star on combinations")
    {
        auto x = single("1;1;{1,1'}[0,1]", 3);
        auto y = single("1;0;{1}[1,0]", frac(1, 2));
        auto t = tensor(x, y);
        CHECK(t == single("2;1;{1,1'}[0,1]|{2}[1,0]", frac(3, 2)));
        CHECK(star(star(t)) == t);
    }

    TEST_CASE("decorated monoid composition")
    {
        auto mp = make_monoid_params(1, 1);
        auto ones = EvaluationTable::constant(1, 1);
        auto zero_alpha = ones;
        zero_alpha.values[0][0] = 0;
        auto cap = parse_diagram("1;0;{1}[0,0]");
        auto cup = parse_diagram("0;1;{1'}[0,0]");
        CHECK(monoid_compose(cap, cup, mp, ones) == MonoidValue(Diagram::empty()));
        CHECK_FALSE(monoid_compose(cap, cup, mp, zero_alpha).has_value());
        CHECK_FALSE(monoid_compose(MonoidValue(), MonoidValue(Diagram::identity(1)), mp, ones).has_value());
        CHECK_FALSE(monoid_compose(MonoidValue(Diagram::identity(1)), MonoidValue(), mp, ones).has_value());
        CHECK_THROWS_AS(monoid_compose(cap, cup, mp, EvaluationTable::constant(2, 1)), PreconditionError);
    }

    TEST_CASE("JSON form")
    {
        auto x = single("1;1;{1,1'}[0,0]", frac(-2, 3));
        CHECK(lincomb_to_json_text(x) == R"([["1;1;{1,1'}[0,0]","-2/3"]])");
    }
}
