#include <catch2/catch_amalgamated.hpp>

#include "chv/orbits.hpp"
#include "chv/parser.hpp"
#include "support/oracles.hpp"

using namespace chv;

namespace {

Polynomial P(const std::string& s, const ContextPtr& ctx) { return parse_poly(s, ctx); }

ClosedSet V(const ContextPtr& ctx, std::initializer_list<std::string> gens)
{
    std::vector<Polynomial> ps;
    for (const auto& s : gens) ps.push_back(P(s, ctx));
    return ClosedSet(Ideal(ctx, std::move(ps)));
}

std::vector<mpq_class> pt(std::initializer_list<long> xs)
{
    return std::vector<mpq_class>(xs.begin(), xs.end());
}

// conjugation orbit of the 2x2 Jordan block under SL2
OrbitProblem jordan_problem()
{
    auto ctx = RingContext::make({"b11", "b12", "b21", "b22"}, {"g11", "g12", "g21", "g22"});
    OrbitProblem p;
    p.graph = V(ctx, {"g21*g22 - b11", "g22^2 - b12", "-g21^2 - b21", "-g21*g22 - b22",
                      "g11*g22 - g12*g21 - 1"});
    p.base_point = pt({0, 1, 0, 0});
    p.identity = pt({1, 0, 0, 1});
    auto base = ctx->base_only();
    p.translations.push_back(
        {"rot", {P("b22", base), P("-b21", base), P("-b12", base), P("b11", base)}});
    return p;
}

OrbitProblem toric_problem(long a1, long a2, long a3, long a4, bool injective)
{
    auto ctx = RingContext::make({"b1", "b2", "b3", "b4"}, {"t1", "t2", "t3", "s"});
    auto c = [&](long a) { return std::to_string(a); };
    OrbitProblem p;
    p.graph = V(ctx, {"b1 - " + c(a1) + "*t1", "b2 - " + c(a2) + "*t2",
                      "b3 - " + c(a3) + "*t3", "b4 - " + c(a4) + "*t1^2*t2^2*s",
                      "t1*t2*t3*s - 1"});
    p.base_point = pt({a1, a2, a3, a4});
    p.identity = pt({1, 1, 1, 1});
    p.injective = injective;
    return p;
}

} // namespace

TEST_CASE("Jacobian echelon of the Jordan orbit")
{
    OrbitProblem p = jordan_problem();
    EchelonReport rep = jacobian_echelon(p);
    // pivots in columns g11, g21, g22; the free direction is g12
    REQUIRE(rep.nonpivot_fiber.size() == 1);
    CHECK(p.graph.context()->name(p.graph.context()->num_base() + rep.nonpivot_fiber[0]) ==
          "g12");

    auto [E, gamma0] = jacobian_hyperplanes(p);
    REQUIRE(E.generators().size() == 1);
    CHECK(E.generators()[0] == P("g12", p.graph.context()));
}

TEST_CASE("Jacobian corner cases")
{
    // trivial action: zero Jacobian pins every group variable to the identity
    auto ctx = RingContext::make({"b"}, {"g"});
    OrbitProblem triv;
    triv.graph = V(ctx, {"b - 1"});
    triv.base_point = pt({1});
    triv.identity = pt({0});
    EchelonReport rep = jacobian_echelon(triv);
    CHECK(rep.pivots.empty());
    REQUIRE(rep.nonpivot_fiber.size() == 1);
    auto [E, gamma0] = jacobian_hyperplanes(triv);
    CHECK(E.generators()[0] == P("g", ctx));

    // full-pivot Jacobian: no hyperplane needed
    OrbitProblem full;
    full.graph = V(ctx, {"b - g"});
    full.base_point = pt({0});
    full.identity = pt({0});
    auto [E2, g2] = jacobian_hyperplanes(full);
    CHECK(E2.generators().empty());
    CHECK(g2.set_equal(full.graph));
}

TEST_CASE("orbit problem validation")
{
    OrbitProblem p = jordan_problem();
    p.base_point = pt({1, 1, 0, 0}); // not on the graph
    CHECK_THROWS(p.validate());
}

TEST_CASE("Jordan orbit: intersect, do not iterate")
{
    OrbitProblem p = jordan_problem();
    OrbitResult r = orbit_image(p);
    auto base = p.graph.context()->base_only();

    CHECK(r.used_jacobian);
    CHECK_FALSE(r.used_fallback);
    CHECK(r.closure.set_equal(V(base, {"b11 + b22", "b11*b22 - b12*b21"})));
    // on Γ ∩ {g12=0} the determinant forces g22 ≠ 0, so b12 = g22^2 cuts the
    // boundary: the hull is the g12-variant of the classical V(b11,b21,b22)
    CHECK(r.first_hull.set_equal(V(base, {"b11", "b12", "b22"})));
    CHECK(r.translations_used == 1);
    CHECK(r.final_hull.set_equal(V(base, {"b11", "b12", "b21", "b22"})));

    REQUIRE(r.image.components().size() == 1);
    const auto& md = r.image.components()[0];
    CHECK(md.positive.set_equal(V(base, {"b11 + b22", "b11*b22 - b12*b21"})));
    REQUIRE(md.subtrahends.size() == 1);
    CHECK(md.subtrahends[0].set_equal(V(base, {"b11", "b12", "b21", "b22"})));

    // the Jordan block itself lies in the computed orbit
    CHECK(r.image.contains_point(pt({0, 1, 0, 0})));
    CHECK_FALSE(r.image.contains_point(pt({0, 0, 0, 0})));
}

TEST_CASE("Jordan orbit: the manual g11 = 0 cut reproduces the classical hull")
{
    OrbitProblem p = jordan_problem();
    auto ctx = p.graph.context();
    auto base = ctx->base_only();
    ClosedSet gamma0(p.graph.ideal() + Ideal(ctx, {P("g11", ctx)}));
    HyperplaneIterator hp(ctx, 0);
    LCAResult lca = lca_infinity(gamma0, hp, /*skip_fiber_reduction=*/true);
    CHECK(lca.image_closure.set_equal(V(base, {"b11 + b22", "b11*b22 - b12*b21"})));
    CHECK(lca.boundary_hull.set_equal(V(base, {"b11", "b21", "b22"})));
}

TEST_CASE("translate correctness on sample points")
{
    OrbitProblem p = jordan_problem();
    auto base = p.graph.context()->base_only();
    ClosedSet d1 = V(base, {"b11", "b21", "b22"});
    std::map<int, Polynomial> sigma;
    for (std::size_t j = 0; j < 4; ++j)
        sigma.emplace(static_cast<int>(j), p.translations[0].images[j]);
    std::vector<Polynomial> tr;
    for (const auto& g : d1.ideal().generators()) tr.push_back(g.substitute(sigma, base));
    ClosedSet d2{Ideal(base, tr)};
    // [[0,c],[0,0]] conjugated by the rotation lands at [[0,0],[-c,0]]
    for (long c : {1, 2, -3}) {
        CHECK(d1.contains_point(pt({0, c, 0, 0})));
        CHECK(d2.contains_point(pt({0, 0, -c, 0})));
        CHECK_FALSE(d2.contains_point(pt({0, c, 0, 0})));
    }
    CHECK(d2.set_equal(V(base, {"b11", "b12", "b22"})));
}

TEST_CASE("toric dense orbit via the injective shortcut")
{
    OrbitProblem p = toric_problem(1, 1, 1, 1, true);
    OrbitResult r = orbit_image(p);
    auto base = p.graph.context()->base_only();

    CHECK_FALSE(r.used_fallback);
    CHECK(r.closure.set_equal(V(base, {"b1*b2 - b3*b4"})));
    REQUIRE(r.image.components().size() == 1);
    const auto& md = r.image.components()[0];
    REQUIRE(md.subtrahends.size() == 1);
    // the union of the four coordinate planes
    CHECK(md.subtrahends[0].set_equal(V(base, {"b1*b2", "b3*b4"})));

    // hull points have no preimage, closure-minus-hull points do
    ClosedSet hull_point = V(base, {"b1", "b2 - 1", "b3 - 1", "b4"});
    CHECK(preimage_intersect(p.graph, hull_point).ideal().is_unit());
    ClosedSet orbit_point = V(base, {"b1 - 1", "b2 - 1", "b3 - 1", "b4 - 1"});
    CHECK_FALSE(preimage_intersect(p.graph, orbit_point).ideal().is_unit());
    CHECK(r.image.contains_point(pt({1, 1, 1, 1})));
    CHECK_FALSE(r.image.contains_point(pt({0, 1, 1, 0})));
}

TEST_CASE("trivial group: fixed point orbit is closed with empty hull")
{
    auto ctx = RingContext::make({"b"}, {"g"});
    OrbitProblem p;
    p.graph = V(ctx, {"b - 1"});
    p.base_point = pt({1});
    p.identity = pt({0});
    auto base = ctx->base_only();
    p.translations.push_back({"id", {P("b", base)}});
    OrbitResult r = orbit_image(p);
    CHECK(r.closure.set_equal(V(base, {"b - 1"})));
    CHECK(r.first_hull.is_empty());
    CHECK(r.translations_used == 0);
    REQUIRE(r.image.components().size() == 1);
    CHECK(r.image.components()[0].subtrahends.empty());
}

TEST_CASE("toric stratification: ray closures under the principal orbit")
{
    std::vector<OrbitProblem> pts;
    pts.push_back(toric_problem(1, 1, 1, 1, true));
    pts.push_back(toric_problem(0, 1, 1, 0, false));
    pts.push_back(toric_problem(1, 0, 1, 0, false));
    pts.push_back(toric_problem(0, 1, 0, 1, false));
    pts.push_back(toric_problem(1, 0, 0, 1, false));
    auto strata = orbit_stratification(pts);
    REQUIRE(strata.size() == 5);
    auto base = pts[0].graph.context()->base_only();

    CHECK(strata[0].closure.set_equal(V(base, {"b1*b2 - b3*b4"})));
    CHECK(strata[1].closure.set_equal(V(base, {"b1", "b4"})));
    CHECK(strata[2].closure.set_equal(V(base, {"b2", "b4"})));
    CHECK(strata[3].closure.set_equal(V(base, {"b1", "b3"})));
    CHECK(strata[4].closure.set_equal(V(base, {"b2", "b3"})));

    // the poset: the principal stratum strictly contains the four rays
    CHECK(strata[0].contains.size() == 4);
    for (std::size_t i = 1; i < 5; ++i) CHECK(strata[i].contains.empty());
    CHECK(strata[0].orbit.subtrahends.size() == 4);
    for (std::size_t i = 1; i < 5; ++i) CHECK(strata[i].orbit.subtrahends.empty());
}

TEST_CASE("stratification merges points on the same orbit")
{
    std::vector<OrbitProblem> pts;
    pts.push_back(jordan_problem());
    {
        // the conjugate base point y·g for the rotation g
        auto ctx = RingContext::make({"b11", "b12", "b21", "b22"},
                                     {"g11", "g12", "g21", "g22"});
        OrbitProblem q;
        q.graph = V(ctx, {"b11 - g11*g12", "b12 - g12^2", "b21 + g11^2", "b22 + g11*g12",
                          "g11*g22 - g12*g21 - 1"});
        q.base_point = pt({0, 0, -1, 0});
        q.identity = pt({1, 0, 0, 1});
        pts.push_back(q);
    }
    auto strata = orbit_stratification(pts);
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].points.size() == 2);
    CHECK(strata[0].orbit.subtrahends.empty());

    // a single point stratifies as its closure minus nothing
    auto single = orbit_stratification({jordan_problem()});
    REQUIRE(single.size() == 1);
    CHECK(single[0].orbit.subtrahends.empty());
}
