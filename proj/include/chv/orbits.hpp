#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chv/matrix.hpp"
#include "chv/solver.hpp"

namespace chv {

/// Coordinates of y ↦ y·g⁻¹ as polynomials in the base variables; applied
/// to hull generators it realizes the translate D·g.
struct Translation {
    std::string label;
    std::vector<Polynomial> images; // one per base variable, in the base context
};

/// The graph of an orbit morphism g ↦ y·g together with the rational points
/// (identity of the group, base point y) and optional group translations.
struct OrbitProblem {
    ClosedSet graph;                   // in the full ring: base = ambient space, fiber = group
    std::vector<mpq_class> identity;   // ξ, fiber coordinates of 1_G
    std::vector<mpq_class> base_point; // β, base coordinates of y
    std::vector<Translation> translations;
    bool injective = false;

    void validate() const
    {
        const auto& ctx = graph.context();
        if (base_point.size() != ctx->num_base() || identity.size() != ctx->num_fiber())
            throw std::invalid_argument("orbit problem: point dimension mismatch");
        std::vector<mpq_class> full = base_point;
        full.insert(full.end(), identity.begin(), identity.end());
        for (const auto& g : graph.ideal().generators())
            if (g.evaluate(full) != 0)
                throw std::invalid_argument("orbit problem: (y, 1_G) does not lie on the graph");
        for (const auto& tr : translations)
            if (tr.images.size() != ctx->num_base())
                throw std::invalid_argument("orbit problem: translation arity mismatch");
    }
};

struct EchelonReport {
    QMatrix matrix;               // row echelon form of the fiber Jacobian at (β, ξ)
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> nonpivot_fiber; // fiber variable offsets without pivot
};

struct TangentHeuristicInadmissible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Jacobian of the graph generators in the fiber directions at (β, ξ),
/// substituting the base point first (cheaper), then row-reduced.
inline EchelonReport jacobian_echelon(const OrbitProblem& p)
{
    p.validate();
    const auto& ctx = p.graph.context();
    const std::size_t nb = ctx->num_base();
    const std::size_t nf = ctx->num_fiber();
    const auto& gens = p.graph.ideal().generators();

    std::map<int, Polynomial> base_subst;
    for (std::size_t j = 0; j < nb; ++j)
        base_subst.emplace(static_cast<int>(j), Polynomial::constant(ctx, p.base_point[j]));

    std::vector<mpq_class> full(nb + nf, 0);
    for (std::size_t i = 0; i < nf; ++i) full[nb + i] = p.identity[i];

    QMatrix jac(gens.size(), nf);
    for (std::size_t r = 0; r < gens.size(); ++r) {
        Polynomial at_base = gens[r].substitute(base_subst, ctx);
        for (std::size_t i = 0; i < nf; ++i)
            jac.at(r, i) = at_base.derivative(nb + i).evaluate(full);
    }
    EchelonReport rep{jac, {}, {}};
    rep.pivots = rep.matrix.row_echelon();
    std::vector<char> has_pivot(nf, 0);
    for (auto c : rep.pivots) has_pivot[c] = 1;
    for (std::size_t i = 0; i < nf; ++i)
        if (!has_pivot[i]) rep.nonpivot_fiber.push_back(i);
    return rep;
}

/// The affine subspace E pinning the non-pivot group directions to the
/// identity, and Γ₀ = Γ ∩ E. The generic admissibility conditions (fiber
/// gap zero, image closure preserved) are verified post hoc; failure throws
/// TangentHeuristicInadmissible so callers can fall back to the generic
/// reducer.
inline std::pair<Ideal, ClosedSet> jacobian_hyperplanes(const OrbitProblem& p)
{
    const auto& ctx = p.graph.context();
    const std::size_t nb = ctx->num_base();
    EchelonReport rep = jacobian_echelon(p);
    std::vector<Polynomial> e_gens;
    for (auto i : rep.nonpivot_fiber)
        e_gens.push_back(Polynomial::variable(ctx, nb + i) -
                         Polynomial::constant(ctx, p.identity[i]));
    Ideal E(ctx, e_gens);
    ClosedSet gamma0(p.graph.ideal() + E);

    DimensionReport dt = dimension(gamma0.ideal());
    Ideal img0 = eliminate_fiber(gamma0.ideal());
    DimensionReport di = dimension(img0);
    if (dt.dim - di.dim != 0)
        throw TangentHeuristicInadmissible("tangent heuristic inadmissible: fiber gap " +
                                           std::to_string(dt.dim - di.dim));
    Ideal img = eliminate_fiber(p.graph.ideal());
    if (!ClosedSet(img0).contains_set(ClosedSet(img)))
        throw TangentHeuristicInadmissible(
            "tangent heuristic inadmissible: image closure not preserved");
    return {std::move(E), std::move(gamma0)};
}

struct OrbitResult {
    ConstructibleSet image;
    ClosedSet closure;     // orbit closure in the base
    ClosedSet first_hull;  // hull from the single LCA call
    ClosedSet final_hull;  // after intersecting with translates
    std::size_t translations_used = 0;
    bool used_jacobian = false;
    bool used_fallback = false; // generic graph iteration had to finish the job
};

/// Compute the orbit as a locally closed set: one locally closed
/// approximation (skipping fiber reduction for injective orbit morphisms,
/// using the tangent-space heuristic otherwise), then intersect the hull
/// with its translates until no orbit point lies over it.
inline OrbitResult orbit_image(const OrbitProblem& p, const SolverOptions& opt = {})
{
    p.validate();
    const auto& ctx = p.graph.context();
    auto base = ctx->base_only();
    OrbitResult res;

    LCAResult lca;
    if (p.injective) {
        HyperplaneIterator hp(ctx, opt.seed, opt.hyperplane_stage_budget);
        lca = lca_infinity(p.graph, hp, /*skip_fiber_reduction=*/true);
    } else {
        try {
            auto [E, gamma0] = jacobian_hyperplanes(p);
            res.used_jacobian = true;
            HyperplaneIterator hp(ctx, opt.seed, opt.hyperplane_stage_budget);
            lca = lca_infinity(gamma0, hp, /*skip_fiber_reduction=*/true);
        } catch (const TangentHeuristicInadmissible&) {
            HyperplaneIterator hp(ctx, opt.seed, opt.hyperplane_stage_budget);
            lca = lca_infinity(p.graph, hp, /*skip_fiber_reduction=*/false);
        }
    }
    res.closure = lca.image_closure;
    res.first_hull = lca.boundary_hull;

    ConstructibleSet out(base);
    if (lca.image_closure.is_empty()) return res;

    ClosedSet hull = lca.boundary_hull;
    if (p.injective || hull.is_empty()) {
        // a hull devoid of choices is group-invariant, hence the boundary
        res.final_hull = hull;
        std::vector<ClosedSet> subs;
        if (!hull.is_empty()) subs.push_back(hull);
        out.add_normalized(lca.image_closure, std::move(subs));
        res.image = std::move(out);
        return res;
    }

    auto orbit_points_over = [&](const ClosedSet& d) {
        return !preimage_intersect(p.graph, d).ideal().is_unit();
    };

    std::size_t used = 0;
    bool emptied = !orbit_points_over(hull);
    while (!emptied && used < p.translations.size()) {
        const Translation& tr = p.translations[used];
        ++used;
        std::map<int, Polynomial> sigma;
        for (std::size_t j = 0; j < base->num_vars(); ++j)
            sigma.emplace(static_cast<int>(j), tr.images[j]);
        std::vector<Polynomial> translated;
        for (const auto& g : hull.ideal().generators())
            if (!g.is_zero()) translated.push_back(g.substitute(sigma, base));
        ClosedSet hull_g(Ideal(base, std::move(translated)));
        hull = ClosedSet(hull.ideal() + hull_g.ideal()); // set intersection
        emptied = !orbit_points_over(hull);
    }
    res.translations_used = used;
    res.final_hull = hull;

    if (!emptied) {
        // translations exhausted: finish with the generic iteration
        res.used_fallback = true;
        res.image = constructible_projection(p.graph, opt);
        return res;
    }

    out.add_normalized(lca.image_closure, {hull});
    res.image = std::move(out);
    return res;
}

struct OrbitStratum {
    ClosedSet closure;
    MultipleDifference orbit;
    std::vector<std::size_t> contains; // indices of strata strictly below
    std::vector<std::size_t> points;   // indices of input problems on this stratum
};

/// Stratify a finite union of orbits: compute each orbit closure (via the
/// tangent heuristic where admissible), dedup equal closures, order them by
/// containment and subtract from each closure the maximal ones strictly
/// below it.
inline std::vector<OrbitStratum> orbit_stratification(const std::vector<OrbitProblem>& problems)
{
    std::vector<OrbitStratum> strata;
    for (std::size_t k = 0; k < problems.size(); ++k) {
        const auto& p = problems[k];
        p.validate();
        ClosedSet closure;
        try {
            auto [E, gamma0] = jacobian_hyperplanes(p);
            closure = ClosedSet(eliminate_fiber(gamma0.ideal()));
        } catch (const TangentHeuristicInadmissible&) {
            closure = ClosedSet(eliminate_fiber(p.graph.ideal()));
        }
        bool merged = false;
        for (auto& s : strata)
            if (s.closure.set_equal(closure)) {
                s.points.push_back(k);
                merged = true;
                break;
            }
        if (!merged) strata.push_back({std::move(closure), {}, {}, {k}});
    }
    for (std::size_t i = 0; i < strata.size(); ++i) {
        std::vector<ClosedSet> below;
        for (std::size_t j = 0; j < strata.size(); ++j) {
            if (i == j) continue;
            if (strata[i].closure.contains_set(strata[j].closure)) {
                strata[i].contains.push_back(j);
                below.push_back(strata[j].closure);
            }
        }
        auto md = make_difference(strata[i].closure, std::move(below));
        if (!md)
            throw std::logic_error("orbit stratum collapsed; equal closures should have merged");
        strata[i].orbit = std::move(*md);
    }
    return strata;
}

} // namespace chv
