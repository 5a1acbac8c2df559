#include <catch2/catch_amalgamated.hpp>

#include "chv/parser.hpp"
#include "chv/polynomial.hpp"
#include "support/oracles.hpp"

using namespace chv;
using chvtest::Rng;

namespace {

ContextPtr bx_ctx() { return RingContext::make({"b"}, {"x"}); }

Polynomial P(const std::string& s, const ContextPtr& ctx) { return parse_poly(s, ctx); }

// term-by-term brute-force multiplier, independent of operator*
Polynomial naive_mul(const Polynomial& a, const Polynomial& b)
{
    Polynomial acc = Polynomial::zero(a.context());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            acc += Polynomial::term(a.context(), ta.mono * tb.mono, ta.coeff * tb.coeff);
    return acc;
}

} // namespace

TEST_CASE("arithmetic basics")
{
    auto ctx = bx_ctx();
    CHECK(P("(x+1)*(x-1)", ctx) == P("x^2-1", ctx));
    Polynomial f = P("3*b*x^2 - 1/2*x + 7", ctx);
    CHECK(f + Polynomial::zero(ctx) == f);
    CHECK(P("(b*x-1)*x + x", ctx) == P("b*x^2", ctx));
    CHECK(naive_mul(P("b*x-1", ctx), P("x", ctx)) + P("x", ctx) == P("b*x^2", ctx));
}

TEST_CASE("arithmetic rejects context mixing")
{
    auto c1 = bx_ctx();
    auto c2 = RingContext::make({"b"}, {"y"});
    CHECK_THROWS(P("b", c1) + P("b", c2));
}

TEST_CASE("ring axioms on random triples")
{
    auto ctx = RingContext::make({"a", "b"}, {"x", "y"});
    Rng rng(42);
    for (int rep = 0; rep < 40; ++rep) {
        Polynomial f = chvtest::random_poly(rng, ctx, 3, 4);
        Polynomial g = chvtest::random_poly(rng, ctx, 3, 4);
        Polynomial h = chvtest::random_poly(rng, ctx, 3, 4);
        CHECK(f + g == g + f);
        CHECK((f + g) + h == f + (g + h));
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == naive_mul(f, g));
        CHECK(f - f == Polynomial::zero(ctx));
    }
}

TEST_CASE("monomial order: block elimination puts any fiber power above base")
{
    auto ctx = bx_ctx();
    auto ord = MonomialOrder::block_fiber(*ctx);
    Monomial x = Monomial::var(*ctx, 1);
    Monomial b2 = Monomial::var(*ctx, 0, 2);
    CHECK(ord.compare(x, b2) > 0);
    CHECK(ord.compare(x, x) == 0);
}

TEST_CASE("monomial order: degrevlex on the degree-2 slice")
{
    auto ctx = RingContext::make({}, {"x1", "x2"});
    auto ord = MonomialOrder::degrevlex(2);
    Monomial x1x1({2, 0}, 0);
    Monomial x1x2({1, 1}, 0);
    Monomial x2x2({0, 2}, 0);
    // enumerate the order on all degree-2 monomials by definition
    CHECK(ord.compare(x1x1, x1x2) > 0);
    CHECK(ord.compare(x1x2, x2x2) > 0);
    CHECK(ord.compare(x1x2, x1x1) < 0);
}

TEST_CASE("monomial order properties on random triples")
{
    auto ctx = RingContext::make({"a", "b"}, {"x", "y"});
    std::vector<MonomialOrder> orders = {
        MonomialOrder::lex(4), MonomialOrder::degrevlex(4), MonomialOrder::block_fiber(*ctx)};
    Rng rng(7);
    Monomial one = Monomial::one(*ctx);
    for (const auto& ord : orders) {
        for (int rep = 0; rep < 60; ++rep) {
            Monomial m1 = chvtest::random_monomial(rng, ctx, 4);
            Monomial m2 = chvtest::random_monomial(rng, ctx, 4);
            Monomial t = chvtest::random_monomial(rng, ctx, 3);
            // totality + antisymmetry
            int c12 = ord.compare(m1, m2);
            CHECK(c12 == -ord.compare(m2, m1));
            if (m1 == m2) CHECK(c12 == 0);
            // multiplicativity
            if (c12 < 0) CHECK(ord.compare(m1 * t, m2 * t) < 0);
            // global: 1 is minimal
            CHECK(ord.compare(one, m1) <= 0);
        }
    }
}

TEST_CASE("maxdeg part")
{
    auto ctx = bx_ctx();
    CHECK(P("b*x-1", ctx).maxdeg_part() == P("b*x", ctx));
    CHECK(P("b*(x^2+1)-x", ctx).maxdeg_part() == P("b*x^2", ctx));
    auto base2 = RingContext::make({"b1", "b2"}, {"x"});
    CHECK(P("b1*b2", base2).maxdeg_part() == P("b1*b2", base2)); // fiber degree 0
    CHECK_THROWS(Polynomial::zero(ctx).maxdeg_part());
}

TEST_CASE("maxdeg part is idempotent and fiber-homogeneous")
{
    auto ctx = RingContext::make({"a", "b"}, {"x", "y"});
    Rng rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        Polynomial f = chvtest::random_poly(rng, ctx, 4, 5);
        if (f.is_zero()) continue;
        Polynomial m = f.maxdeg_part();
        CHECK(m.maxdeg_part() == m);
        std::uint32_t d = m.fiber_degree();
        for (const auto& t : m.terms()) CHECK(t.mono.fiber_degree() == d);
    }
}

TEST_CASE("substitution")
{
    auto ctx = bx_ctx();
    auto base = ctx->base_only();
    // (b*x + b^2) at x = 0
    Polynomial f = P("b*x + b^2", ctx);
    CHECK(f.restrict_fiber_to_zero(base) == P("b^2", base));

    // sigma maps to polynomials only; an unknown variable is an error
    CHECK_THROWS(f.substitute({{5, Polynomial::one(ctx)}}));

    auto jctx = RingContext::make({"b12"}, {"g22"});
    Polynomial g = P("g22^2 - b12", jctx);
    auto sigma = std::map<int, Polynomial>{{jctx->index_of("g22"), Polynomial::zero(jctx)}};
    CHECK(g.substitute(sigma, jctx) == P("-b12", jctx));
}

TEST_CASE("substitution is a ring homomorphism and respects composition")
{
    auto ctx = RingContext::make({"a"}, {"x", "y"});
    Rng rng(5);
    for (int rep = 0; rep < 15; ++rep) {
        Polynomial f = chvtest::random_poly(rng, ctx, 3, 3);
        Polynomial g = chvtest::random_poly(rng, ctx, 3, 3);
        std::map<int, Polynomial> sigma = {
            {1, chvtest::random_poly(rng, ctx, 2, 2)},
            {2, chvtest::random_poly(rng, ctx, 2, 2)},
        };
        CHECK((f * g).substitute(sigma, ctx) == f.substitute(sigma, ctx) * g.substitute(sigma, ctx));
        CHECK((f + g).substitute(sigma, ctx) == f.substitute(sigma, ctx) + g.substitute(sigma, ctx));

        // composition: (f sigma) tau == f (tau ∘ sigma)
        std::map<int, Polynomial> tau = {{1, chvtest::random_poly(rng, ctx, 2, 2)}};
        std::map<int, Polynomial> comp;
        for (const auto& [v, img] : sigma) comp.emplace(v, img.substitute(tau, ctx));
        comp.try_emplace(1, tau.at(1)); // vars untouched by sigma still map under tau
        CHECK(f.substitute(sigma, ctx).substitute(tau, ctx) == f.substitute(comp, ctx));
    }
}

TEST_CASE("parser round trip")
{
    auto ctx = RingContext::make({"b1", "b2"}, {"x1", "x2"});
    Rng rng(123);
    for (int rep = 0; rep < 40; ++rep) {
        Polynomial f = chvtest::random_poly(rng, ctx, 4, 6);
        CHECK(parse_poly(f.to_string(), ctx) == f);
    }
    CHECK(parse_poly("0", ctx).is_zero());
    CHECK_THROWS_AS(parse_poly("b1 + q", ctx), ParseError);
    CHECK_THROWS_AS(parse_poly("b1 +", ctx), ParseError);
    CHECK(parse_poly("3/4*b1^2 - x1*x2", ctx).to_string() == "3/4*b1^2 - x1*x2");
}
