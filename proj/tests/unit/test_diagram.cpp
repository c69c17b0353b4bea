#include "../generators.hpp"
#include "../oracles.hpp"

#include "moebius/diagram.hpp"
#include "moebius/errors.hpp"
#include "moebius/msmall.hpp"

#include <doctest.h>

using namespace moebius;

namespace {

const char* kA = "6;6;{1,2'}[0,0]|{2,4,5}[0,0]|{3,3'}[0,0]|{6,1',4',6'}[0,0]|{5'}[0,0]";
const char* kB = "6;6;{1,1'}[0,0]|{2,4,5}[0,0]|{3}[0,0]|{6,2',4',6'}[0,0]|{3'}[0,0]|{5'}[0,0]";
const char* kCrossing = "2;2;{1,2'}[0,0]|{2,1'}[0,0]";

} // namespace

TEST_SUITE("diagram")
{
    TEST_CASE("literals round-trip")
    {
        for (const char* lit : {kA, kB, "1;1;{1,1'}[0,0]", "1;1;{1,1'}[2,1]", "0;0;", "2;0;{1,2}[3,2]"})
            CHECK(render_diagram(parse_diagram(lit)) == lit);
        Diagram a = parse_diagram(kA);
        CHECK(a.n() == 6);
        CHECK(a.m() == 6);
        CHECK(a.blocks().size() == 5);
        CHECK(parse_diagram(" 1 ; 1 ; { 1 , 1' } [ 0 , 0 ] ") == Diagram::identity(1));
        Diagram s = parse_diagram("1;1;{1,1'}[2,1]");
        CHECK(s.blocks()[0].dec == Decoration{2, 1});
        // Block order is canonical regardless of input order.
        CHECK(parse_diagram("2;2;{2',1}[0,0]|{1',2}[0,0]") == parse_diagram(kCrossing));
    }

    TEST_CASE("malformed literals")
    {
        CHECK_THROWS_AS(parse_diagram("1;1;{1,1}[0,0]"), ParseError);
        CHECK_THROWS_AS(parse_diagram("2;1;{1,1'}[0,0]"), ParseError);
        CHECK_THROWS_AS(parse_diagram("1;1;{1,1'}[-1,0]"), ParseError);
        CHECK_THROWS_AS(parse_diagram("1;1;{1,2'}[0,0]"), ParseError);
        CHECK_THROWS_AS(parse_diagram("1;1;{1,1'}"), ParseError);
        CHECK_THROWS_AS(parse_diagram("1;1;{1,1'}[0,0]x"), ParseError);
        CHECK_THROWS_AS(Diagram(1, 1, {Block{{0}, {}}}), PreconditionError);
    }

    TEST_CASE("Moebius normal form")
    {
        CHECK(normalize_decoration({0, 3}) == Decoration{1, 1});
        CHECK(normalize_decoration({0, 2}) == Decoration{0, 2});
        CHECK(normalize_decoration({2, 5}) == Decoration{4, 1});
        CHECK(render_diagram(normalize_mob(parse_diagram("1;1;{1,1'}[0,4]"))) == "1;1;{1,1'}[1,2]");
    }

    TEST_CASE("tensor")
    {
        Diagram ab = tensor(parse_diagram(kA), parse_diagram(kB));
        CHECK(ab == parse_diagram("12;12;{1,2'}[0,0]|{2,4,5}[0,0]|{3,3'}[0,0]|{6,1',4',6'}[0,0]|{5'}[0,0]|"
                                  "{7,7'}[0,0]|{8,10,11}[0,0]|{9}[0,0]|{12,8',10',12'}[0,0]|{9'}[0,0]|{11'}[0,0]"));
        CHECK(tensor(parse_diagram(kA), Diagram::empty()) == parse_diagram(kA));
        CHECK(tensor(Diagram::empty(), parse_diagram(kA)) == parse_diagram(kA));
        CHECK(tensor(Diagram::identity(1), Diagram::identity(1)) == Diagram::identity(2));
    }

    TEST_CASE("star")
    {
        CHECK(star(parse_diagram("2;0;{1,2}[0,0]")) == parse_diagram("0;2;{1',2'}[0,0]"));
        CHECK(star(star(parse_diagram(kA))) == parse_diagram(kA));
        CHECK(star(Diagram::identity(3)) == Diagram::identity(3));
        CHECK(star(parse_diagram("1;2;{1,2'}[1,2]|{1'}[0,1]")) == parse_diagram("2;1;{2,1'}[1,2]|{1}[0,1]"));
    }

    TEST_CASE("through strands")
    {
        CHECK(through_strands(parse_diagram(kA)) == 3);
        CHECK(through_strands(Diagram::identity(4)) == 4);
        CHECK(through_strands(parse_diagram("2;0;{1,2}[0,0]")) == 0);
    }

    TEST_CASE("family membership")
    {
        Diagram rb = parse_diagram("3;3;{1,2}[0,0]|{3,1'}[0,0]|{2'}[0,0]|{3'}[0,0]");
        CHECK(is_member(rb, Family::RookBrauer));
        CHECK_FALSE(is_member(rb, Family::Brauer));
        Diagram id = Diagram::identity(3).with_decorations({{1, 2}, {0, 1}, {2, 0}});
        for (Family f : all_families()) CHECK(is_member(id, f));
        Diagram s = parse_diagram(kCrossing);
        for (Family f : all_families()) CHECK(is_member(s, f) == !is_planar_family(f));
        CHECK(is_member(parse_diagram(kB), Family::PlanarPartition));
        CHECK_FALSE(is_member(parse_diagram(kA), Family::PlanarPartition));
    }

    TEST_CASE("membership is monotone along the family inclusions")
    {
        const std::vector<std::pair<Family, Family>> inclusions{
            {Family::Symmetric, Family::Brauer},       {Family::Brauer, Family::RookBrauer},
            {Family::RookBrauer, Family::Partition},   {Family::TemperleyLieb, Family::Motzkin},
            {Family::Motzkin, Family::PlanarPartition}, {Family::PlanarRook, Family::Motzkin},
            {Family::Rook, Family::RookBrauer},        {Family::PlanarSymmetric, Family::TemperleyLieb},
        };
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m)
                for (const auto& d : enumerate_shapes(Family::Partition, n, m))
                    for (auto [small, big] : inclusions)
                        if (is_member(d, small)) CHECK(is_member(d, big));
    }

    TEST_CASE("shape enumeration agrees with membership filtering")
    {
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; m <= 3; ++m) {
                auto all = enumerate_shapes(Family::Partition, n, m);
                for (Family f : all_families()) {
                    std::vector<Diagram> filtered;
                    for (const auto& d : all)
                        if (is_member(d, f)) filtered.push_back(d);
                    std::sort(filtered.begin(), filtered.end());
                    CHECK(enumerate_shapes(f, n, m) == filtered);
                }
            }
        CHECK(set_partitions(4).size() == 15);
        CHECK(enumerate_shapes(Family::Partition, 3, 3).size() == 203);
        CHECK(enumerate_shapes(Family::TemperleyLieb, 3, 3).size() == 5);
        CHECK(enumerate_shapes(Family::Motzkin, 2, 2).size() == 9);
    }

    TEST_CASE("family names")
    {
        for (Family f : all_families()) CHECK(parse_family(family_name(f)) == f);
        CHECK(parse_family("tl") == Family::TemperleyLieb);
        CHECK(parse_family("planar-rook") == Family::PlanarRook);
        CHECK(parse_family("ROOK_BRAUER") == Family::RookBrauer);
        CHECK_THROWS_AS(parse_family("octopus"), ParseError);
    }

    TEST_CASE("stacking agrees with graph-search composition")
    {
        gen::Rng rng(7);
        for (int t = 0; t < 300; ++t) {
            int n = static_cast<int>(gen::uniform(rng, 0, 3)), m = static_cast<int>(gen::uniform(rng, 0, 3)),
                k = static_cast<int>(gen::uniform(rng, 0, 3));
            Diagram lower = gen::diagram(rng, Family::Partition, n, m, 1);
            Diagram upper = gen::diagram(rng, Family::Partition, m, k, 1);
            auto st = stack(upper, lower);
            auto ref = oracle::compose_partitions(upper, lower);
            CHECK(oracle::partition_of(st.diagram) == ref.partition);
            CHECK(static_cast<int>(st.closed.size()) == ref.closed);
        }
    }

    TEST_CASE("decorations add along merged components")
    {
        Diagram lower = parse_diagram("1;2;{1,1',2'}[1,1]");
        Diagram upper = parse_diagram("2;1;{1}[0,1]|{2,1'}[2,0]");
        auto st = stack(upper, lower);
        CHECK(st.closed.empty());
        CHECK(render_diagram(st.diagram) == "1;1;{1,1'}[3,2]");
        auto loop = stack(parse_diagram("1;0;{1}[0,2]"), parse_diagram("0;1;{1'}[0,1]"));
        REQUIRE(loop.closed.size() == 1);
        CHECK(loop.closed[0] == Decoration{0, 3});
    }

    TEST_CASE("factorization")
    {
        auto mp = make_monoid_params(4, 3);
        auto f = factorize(Diagram::identity(3), mp);
        CHECK(f.lambda_ts == 3);
        CHECK(f.top == Diagram::identity(3));
        CHECK(f.bottom == Diagram::identity(3));
        CHECK(f.middle == WreathElem::identity(3));

        auto g = factorize(parse_diagram("1;1;{1,1'}[1,2]"), mp);
        CHECK(g.bottom == Diagram::identity(1));
        CHECK(g.top == Diagram::identity(1));
        CHECK(g.middle.strands == std::vector<MElem>{{1, 2}});

        auto a = factorize(parse_diagram(kA), make_monoid_params(1, 1));
        CHECK(a.lambda_ts == 3);
        CHECK(a.bottom == parse_diagram("6;3;{1,1'}[0,0]|{2,4,5}[0,0]|{3,2'}[0,0]|{6,3'}[0,0]"));
        CHECK(a.middle.perm == std::vector<int>{1, 2, 0});
    }

    TEST_CASE("factorization round-trips on random diagrams")
    {
        gen::Rng rng(11);
        auto mp = make_monoid_params(3, 1);
        for (Family f : all_families())
            for (int t = 0; t < 30; ++t) {
                int n = static_cast<int>(gen::uniform(rng, 0, 3));
                int m = static_cast<int>(gen::uniform(rng, 0, 3));
                if (!gen::boundary_ok(f, n, m)) continue;
                Diagram d = gen::diagram(rng, f, n, m, 4);
                auto fac = factorize(d, mp);
                CHECK(recompose(fac) == reduce_monoid(normalize_mob(d), mp));
                CHECK(is_member(fac.top, f));
                CHECK(is_member(fac.bottom, f));
                CHECK(through_strands(fac.bottom) == fac.lambda_ts);
            }
    }
}
