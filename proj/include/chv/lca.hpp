#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "chv/geometry.hpp"
#include "chv/hyperplane.hpp"

namespace chv {

struct FiberReductionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Closure of the projection, a relative boundary hull of the image (both in
/// the base ring), and any extra total-space components split off by the
/// fiber reduction (in the full ring, to be processed as separate cases).
struct LCAResult {
    ClosedSet image_closure;
    ClosedSet boundary_hull;
    std::vector<ClosedSet> extra_components;
};

namespace lca_detail {

inline int fiber_dimension_gap(const ClosedSet& g, int* dim_total = nullptr,
                               int* dim_image = nullptr)
{
    DimensionReport dt = dimension(g.ideal());
    DimensionReport di = dimension(eliminate_fiber(g.ideal()));
    if (dim_total) *dim_total = dt.dim;
    if (dim_image) *dim_image = di.dim;
    return dt.dim - di.dim;
}

inline ClosedSet image_closure_of(const ClosedSet& g)
{
    return ClosedSet(eliminate_fiber(g.ideal()));
}

} // namespace lca_detail

/// Replace Γ by a subset with generically zero-dimensional fibers and the
/// same projection closure, intersecting with hyperplanes drawn from `hp`.
/// When a candidate hyperplane shrinks the image, a split is attempted: by
/// the base space after n fruitless steps, by the total space after 4n (the
/// decomposition-free variant; no primary decomposition is ever computed).
/// Complementary pieces are pushed onto the returned component list.
inline std::pair<ClosedSet, std::vector<ClosedSet>> zero_dimensional_fibers(
    const ClosedSet& gamma, HyperplaneSource& hp, std::uint64_t* attempts_out = nullptr)
{
    const auto& ctx = gamma.context();
    const long n = static_cast<long>(ctx->num_fiber());
    std::vector<ClosedSet> extras;
    if (n == 0) return {gamma, extras};

    ClosedSet cur = gamma;
    ClosedSet cur_image = lca_detail::image_closure_of(cur);
    int dim_cur = dimension(cur.ideal()).dim;
    int dim_img = dimension(cur_image.ideal()).dim;
    long s = 1;
    std::uint64_t attempts = 0;

    while (dim_cur - dim_img > 0) {
        auto plane = hp.next();
        if (!plane)
            throw FiberReductionExhausted(
                "fiber reduction exhausted: no admissible hyperplane or split found after " +
                std::to_string(attempts) + " candidates");
        ++attempts;
        if (attempts_out) *attempts_out = attempts;

        ClosedSet cut(cur.ideal() + Ideal(ctx, {*plane}));
        int dim_cut = dimension(cut.ideal()).dim;
        if (dim_cut < dim_cur) {
            ClosedSet cut_image = lca_detail::image_closure_of(cut);
            if (cut_image.contains_set(cur_image)) {
                // dimension dropped without reducing the image
                cur = std::move(cut);
                cur_image = std::move(cut_image);
                dim_cur = dim_cut;
                dim_img = dimension(cur_image.ideal()).dim;
            } else if (s > n) {
                // the image shrank: try splitting the base space
                ClosedSet delta = difference_closure(cur_image, cut_image);
                if (!delta.contains_set(cur_image)) {
                    extras.push_back(preimage_intersect(gamma, delta));
                    cur = preimage_intersect(gamma, cut_image);
                    cur_image = lca_detail::image_closure_of(cur);
                    dim_cur = dimension(cur.ideal()).dim;
                    dim_img = dimension(cur_image.ideal()).dim;
                } else if (s > 4 * n) {
                    // split the total space by the preimage of the cut image
                    ClosedSet part1 = preimage_intersect(gamma, cut_image);
                    if (!part1.contains_set(gamma)) {
                        ClosedSet part2 = difference_closure(gamma, part1);
                        if (!part2.contains_set(gamma)) {
                            extras.push_back(std::move(part2));
                            cur = std::move(part1);
                            cur_image = lca_detail::image_closure_of(cur);
                            dim_cur = dimension(cur.ideal()).dim;
                            dim_img = dimension(cur_image.ideal()).dim;
                        }
                    }
                }
            }
        }
        ++s;
    }
    return {std::move(cur), std::move(extras)};
}

/// The points-at-infinity strategy: compute the block-order basis of the
/// reduced set, read off the elimination ideal, take top fiber-degree parts,
/// saturate away the irrelevant locus and set the fiber variables to zero.
inline LCAResult lca_infinity(const ClosedSet& gamma, HyperplaneSource& hp,
                              bool skip_fiber_reduction = false,
                              std::uint64_t* attempts_out = nullptr)
{
    const auto& ctx = gamma.context();
    auto base = ctx->base_only();

    ClosedSet gamma0 = gamma;
    std::vector<ClosedSet> extras;
    if (!skip_fiber_reduction && ctx->num_fiber() > 0) {
        auto [g0, ex] = zero_dimensional_fibers(gamma, hp, attempts_out);
        gamma0 = std::move(g0);
        extras = std::move(ex);
    }

    Ideal image_ideal = eliminate_fiber(gamma0.ideal(), base);
    ClosedSet image(image_ideal);
    if (image.is_empty())
        return {ClosedSet::empty_set(base), ClosedSet::empty_set(base), std::move(extras)};
    if (ctx->num_fiber() == 0)
        return {std::move(image), ClosedSet::empty_set(base), std::move(extras)};

    const auto blk = MonomialOrder::block_fiber(*ctx);
    const auto& g0_basis = gamma0.ideal().groebner_basis(blk);
    std::vector<Polynomial> maxdeg;
    maxdeg.reserve(g0_basis.size());
    for (const auto& g : g0_basis)
        if (!g.is_zero()) maxdeg.push_back(g.maxdeg_part());

    std::vector<Polynomial> fiber_vars;
    for (std::size_t i = 0; i < ctx->num_vars(); ++i)
        if (ctx->is_fiber(i)) fiber_vars.push_back(Polynomial::variable(ctx, i));
    Ideal irrelevant(ctx, fiber_vars);
    Ideal sat = saturate(Ideal(ctx, std::move(maxdeg)), irrelevant);

    std::vector<Polynomial> hull_gens;
    for (const auto& g : sat.generators()) {
        Polynomial h = g.restrict_fiber_to_zero(base);
        if (!h.is_zero()) hull_gens.push_back(std::move(h));
    }
    ClosedSet hull(Ideal(base, std::move(hull_gens)) + image_ideal);

    if (hull.contains_set(image))
        throw std::logic_error("strict-hull invariant violated (infinity strategy): hull " +
                               hull.to_string() + " contains image closure " + image.to_string());
    return {std::move(image), std::move(hull), std::move(extras)};
}

/// The generic-freeness strategy: the hull is cut out by the product of the
/// leading base-coefficients of the non-base elements of the block-order
/// basis. No fiber reduction is needed; hulls tend to be of higher degree.
inline LCAResult lca_kemper(const ClosedSet& gamma)
{
    const auto& ctx = gamma.context();
    auto base = ctx->base_only();

    Ideal image_ideal = eliminate_fiber(gamma.ideal(), base);
    ClosedSet image(image_ideal);
    if (image.is_empty())
        return {ClosedSet::empty_set(base), ClosedSet::empty_set(base), {}};
    if (ctx->num_fiber() == 0) return {std::move(image), ClosedSet::empty_set(base), {}};

    const auto blk = MonomialOrder::block_fiber(*ctx);
    Polynomial product = Polynomial::one(base); // empty product if all elements are base-only
    for (const auto& g : gamma.ideal().groebner_basis(blk)) {
        if (g.is_zero() || g.base_only()) continue;
        // leading coefficient of g as a polynomial in the fiber variables:
        // collect the terms sharing the block-leading fiber monomial
        const Monomial& lead = g.leading_term(blk).mono;
        std::vector<Term> coeff_terms;
        for (const auto& t : g.terms()) {
            bool same_fiber_part = true;
            for (std::size_t i = 0; i < ctx->num_vars() && same_fiber_part; ++i)
                if (ctx->is_fiber(i) && t.mono.exp(i) != lead.exp(i)) same_fiber_part = false;
            if (!same_fiber_part) continue;
            std::vector<std::uint16_t> e(t.mono.exps().begin(),
                                         t.mono.exps().begin() + ctx->num_base());
            coeff_terms.push_back({Monomial(std::move(e), ctx->num_base()), t.coeff});
        }
        product *= Polynomial::from_terms(base, std::move(coeff_terms));
    }

    ClosedSet hull(Ideal(base, {product}) + image_ideal);
    if (hull.contains_set(image))
        throw std::logic_error("strict-hull invariant violated (freeness strategy): hull " +
                               hull.to_string() + " contains image closure " + image.to_string());
    return {std::move(image), std::move(hull), {}};
}

} // namespace chv
