#include <catch2/catch_amalgamated.hpp>

#include "chv/geometry.hpp"
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

} // namespace

TEST_CASE("closed containment")
{
    auto ctx = RingContext::make({"b", "b2"}, {});
    CHECK(V(ctx, {"b"}).contains_set(V(ctx, {"b", "b2"})));
    // radical insensitivity
    CHECK(V(ctx, {"b^2"}).set_equal(V(ctx, {"b"})));
    auto b12 = RingContext::make({"b1", "b2"}, {});
    CHECK(V(b12, {"b1*b2"}).contains_set(V(b12, {"b1"})));
    CHECK(chvtest::macaulay_member(P("b1*b2", b12), {P("b1", b12)}, 2));
    CHECK_FALSE(V(b12, {"b1"}).contains_set(V(b12, {"b1*b2"})));
    CHECK_THROWS(V(ctx, {"b"}).contains_set(V(b12, {"b1"})));
}

TEST_CASE("containment is a preorder on random closed sets")
{
    auto ctx = RingContext::make({"a", "b"}, {});
    chvtest::Rng rng(11);
    std::vector<ClosedSet> sets;
    for (int k = 0; k < 6; ++k)
        sets.push_back(ClosedSet(Ideal(ctx, {chvtest::random_poly(rng, ctx, 2, 2),
                                             chvtest::random_poly(rng, ctx, 2, 2)})));
    for (const auto& s : sets) CHECK(s.contains_set(s)); // reflexive
    for (const auto& s1 : sets)
        for (const auto& s2 : sets)
            for (const auto& s3 : sets)
                if (s1.contains_set(s2) && s2.contains_set(s3)) CHECK(s1.contains_set(s3));
}

TEST_CASE("preimage and intersection with base sets")
{
    auto ctx = RingContext::make({"b"}, {"x"});
    auto base = ctx->base_only();
    ClosedSet hyperbola = V(ctx, {"b*x-1"});

    ClosedSet over_origin = preimage_intersect(hyperbola, V(base, {"b"}));
    CHECK(over_origin.is_empty()); // the hyperbola misses b = 0

    CHECK(preimage_intersect(hyperbola, ClosedSet::whole_space(base)).set_equal(hyperbola));

    ClosedSet gamma = V(ctx, {"b*(x^2+1)-x"});
    CHECK(preimage_intersect(gamma, V(base, {"b"})).set_equal(V(ctx, {"b", "x"})));
}

TEST_CASE("difference closure")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    CHECK(difference_closure(V(ctx, {"b1*b2"}), V(ctx, {"b1"})).set_equal(V(ctx, {"b2"})));
    CHECK(difference_closure(V(ctx, {"b1"}), V(ctx, {"b1"})).is_empty());
    // saturation kills embedded structure: <b1^2> : b1^inf is the unit ideal
    CHECK(difference_closure(V(ctx, {"b1^2"}), V(ctx, {"b1"})).is_empty());
    CHECK(difference_closure(V(ctx, {"b1"}), ClosedSet::whole_space(ctx)).is_empty());
}

TEST_CASE("difference closure contains every point of P off Q")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    ClosedSet p = V(ctx, {"b1*b2"});
    ClosedSet q = V(ctx, {"b1"});
    ClosedSet d = difference_closure(p, q);
    for (long a = -3; a <= 3; ++a) {
        // points (a, 0) and (0, a) exhaust the rational points of V(b1*b2)
        auto on_axis1 = pt({a, 0});
        auto on_axis2 = pt({0, a});
        if (p.contains_point(on_axis1) && !q.contains_point(on_axis1))
            CHECK(d.contains_point(on_axis1));
        if (p.contains_point(on_axis2) && !q.contains_point(on_axis2))
            CHECK(d.contains_point(on_axis2));
    }
}

TEST_CASE("multiple difference normalization")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    // subtrahend swallowing the positive part collapses the difference
    CHECK_FALSE(make_difference(V(ctx, {"b1", "b2"}), {V(ctx, {"b1"})}).has_value());
    // dominated subtrahends are dropped, empty ones ignored
    auto md = make_difference(V(ctx, {"b1*b2"}),
                              {V(ctx, {"b1", "b2"}), V(ctx, {"b1"}), ClosedSet::empty_set(ctx)});
    REQUIRE(md.has_value());
    REQUIRE(md->subtrahends.size() == 1);
    CHECK(md->subtrahends[0].set_equal(V(ctx, {"b1"})));
}

TEST_CASE("membership of points in a constructible set")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    ConstructibleSet img(ctx);
    img.add_normalized(ClosedSet::whole_space(ctx), {V(ctx, {"b1"})});
    img.add_normalized(V(ctx, {"b1", "b2"}), {});
    CHECK(img.contains_point(pt({0, 0})));
    CHECK_FALSE(img.contains_point(pt({0, 1})));
    CHECK(img.contains_point(pt({2, 3})));
    CHECK_THROWS(img.contains_point(pt({1})));
}

TEST_CASE("serialization is deterministic and parses back structurally")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    ConstructibleSet img(ctx);
    img.add_normalized(ClosedSet::whole_space(ctx), {V(ctx, {"b1"})});
    img.add_normalized(V(ctx, {"b1", "b2"}), {});
    CHECK(img.to_string() == "Spec B \\ V(b1) ⊎ V(b1, b2)");
    auto j = img.to_json();
    CHECK(j["components"].size() == 2);
    CHECK(j["components"][0]["positive"].empty());
    CHECK(j["components"][0]["subtrahends"][0][0] == "b1");

    ConstructibleSet empty(ctx);
    CHECK(empty.to_string() == "∅");
}

TEST_CASE("presentation matching is radical-blind and order-insensitive")
{
    auto ctx = RingContext::make({"b1", "b2"}, {});
    ConstructibleSet a(ctx), b(ctx);
    a.add_normalized(ClosedSet::whole_space(ctx), {V(ctx, {"b1"})});
    a.add_normalized(V(ctx, {"b1", "b2"}), {});
    b.add_normalized(V(ctx, {"b1^2", "b2"}), {});
    b.add_normalized(ClosedSet::whole_space(ctx), {V(ctx, {"b1^3"})});
    CHECK(presentations_match(a, b));
    ConstructibleSet c(ctx);
    c.add_normalized(ClosedSet::whole_space(ctx), {V(ctx, {"b2"})});
    CHECK_FALSE(presentations_match(a, c));
}
