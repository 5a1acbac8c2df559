#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "chv/ideal.hpp"

namespace chv {

struct DimensionReport {
    int dim = 0; // -1 for the unit ideal
    std::vector<std::string> witness_independent_set;
};

struct DimensionNotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Ideal lift_ideal(const Ideal& I, const ContextPtr& target)
{
    std::vector<Polynomial> gens;
    gens.reserve(I.generators().size());
    for (const auto& g : I.generators()) gens.push_back(g.lift(target));
    return Ideal(target, std::move(gens));
}

/// Drop variables that do not occur; polynomials must not mention them.
inline Polynomial project_poly(const Polynomial& p, const ContextPtr& target)
{
    return p.lift(target);
}

namespace detail {

/// Shared elimination core: compute a block-order basis with `elim_vars`
/// leading, keep the elements free of those variables, and re-home them in
/// `target` (a context lacking the eliminated variables).
inline Ideal eliminate_vars(const Ideal& I, const std::vector<int>& elim_vars,
                            const ContextPtr& target)
{
    const auto ord = MonomialOrder::block(*I.context(), elim_vars);
    std::vector<char> is_elim(I.context()->num_vars(), 0);
    for (int v : elim_vars) is_elim[v] = 1;
    std::vector<Polynomial> kept;
    for (const auto& g : I.groebner_basis(ord)) {
        bool free_of = true;
        for (const auto& t : g.terms()) {
            for (std::size_t i = 0; i < is_elim.size() && free_of; ++i)
                if (is_elim[i] && t.mono.exp(i)) free_of = false;
            if (!free_of) break;
        }
        if (free_of) kept.push_back(g.lift(target));
    }
    return Ideal(target, std::move(kept));
}

} // namespace detail

/// Elimination ideal I ∩ B in the base-only context (closure of the
/// projection); uses the block order with fiber variables leading.
inline Ideal eliminate_fiber(const Ideal& I, const ContextPtr& base_ctx)
{
    std::vector<int> elim;
    for (std::size_t i = 0; i < I.context()->num_vars(); ++i)
        if (I.context()->is_fiber(i)) elim.push_back(static_cast<int>(i));
    if (elim.empty()) {
        std::vector<Polynomial> gens;
        for (const auto& g : I.generators()) gens.push_back(g.lift(base_ctx));
        return Ideal(base_ctx, std::move(gens));
    }
    return detail::eliminate_vars(I, elim, base_ctx);
}

inline Ideal eliminate_fiber(const Ideal& I)
{
    return eliminate_fiber(I, I.context()->base_only());
}

/// I ∩ J via eliminating t from t*I + (1-t)*J.
inline Ideal intersect(const Ideal& I, const Ideal& J)
{
    if (!same_context(I.context(), J.context()))
        throw std::invalid_argument("intersect: context mismatch");
    const auto& ctx = I.context();
    if (I.trivially_zero() || J.trivially_zero()) return Ideal::zero(ctx);
    auto ext = ctx->with_extra_fiber(ctx->fresh_name("t@"));
    int ti = static_cast<int>(ext->num_vars() - 1);
    Polynomial t = Polynomial::variable(ext, ti);
    Polynomial one_minus_t = Polynomial::one(ext) - t;
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        if (!g.is_zero()) gens.push_back(t * g.lift(ext));
    for (const auto& g : J.generators())
        if (!g.is_zero()) gens.push_back(one_minus_t * g.lift(ext));
    return detail::eliminate_vars(Ideal(ext, std::move(gens)), {ti}, ctx);
}

/// p / f for exact divisions (throws if the division leaves a remainder).
inline Polynomial exact_divide(const Polynomial& p, const Polynomial& f)
{
    if (f.is_zero()) throw std::domain_error("division by zero polynomial");
    if (p.is_zero()) return p;
    const auto ord = MonomialOrder::degrevlex(p.context()->num_vars());
    Polynomial q = Polynomial::zero(p.context());
    Polynomial cur = p;
    const Term& ft = f.leading_term(ord);
    while (!cur.is_zero()) {
        const Term& lt = cur.leading_term(ord);
        if (!divides(ft.mono, lt.mono)) throw std::domain_error("non-exact polynomial division");
        Monomial m = quotient(lt.mono, ft.mono);
        mpq_class c = lt.coeff / ft.coeff;
        q += Polynomial::term(p.context(), m, c);
        cur = cur - f.mul_term(m, c);
    }
    return q;
}

/// Ideal quotient (I : f) = (I ∩ <f>) / f.
inline Ideal quotient(const Ideal& I, const Polynomial& f)
{
    if (f.is_zero()) throw std::domain_error("quotient by zero polynomial");
    const auto& ctx = I.context();
    Ideal inter = intersect(I, Ideal(ctx, {f}));
    std::vector<Polynomial> gens;
    for (const auto& g : inter.generators()) gens.push_back(exact_divide(g, f));
    return Ideal(ctx, std::move(gens));
}

/// Saturation (I : f^infty) via eliminating t from I + <t*f - 1>.
inline Ideal saturate(const Ideal& I, const Polynomial& f)
{
    if (f.is_zero()) throw std::domain_error("saturation by zero polynomial");
    const auto& ctx = I.context();
    if (f.is_constant()) return I;
    auto ext = ctx->with_extra_fiber(ctx->fresh_name("t@"));
    int ti = static_cast<int>(ext->num_vars() - 1);
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        if (!g.is_zero()) gens.push_back(g.lift(ext));
    gens.push_back(Polynomial::variable(ext, ti) * f.lift(ext) - Polynomial::one(ext));
    return detail::eliminate_vars(Ideal(ext, std::move(gens)), {ti}, ctx);
}

/// Saturation (I : J^infty) as the intersection of the single-generator
/// saturations over the generators of J.
inline Ideal saturate(const Ideal& I, const Ideal& J)
{
    if (!same_context(I.context(), J.context()))
        throw std::invalid_argument("saturate: context mismatch");
    bool nonzero = false;
    Ideal acc;
    bool first = true;
    for (const auto& g : J.generators()) {
        if (g.is_zero()) continue;
        nonzero = true;
        Ideal part = saturate(I, g);
        if (first) {
            acc = std::move(part);
            first = false;
        } else {
            acc = intersect(acc, part);
        }
    }
    if (!nonzero) throw std::domain_error("saturation by the zero ideal");
    return acc;
}

/// f ∈ √I, decided by the Rabinowitsch trick: 1 ∈ I + <t*f - 1>.
inline bool radical_member(const Polynomial& f, const Ideal& I)
{
    if (f.is_zero()) return true;
    if (f.is_constant()) return I.is_unit(); // nonzero constant lies in √I iff I is the unit ideal
    if (I.contains(f)) return true;
    const auto& ctx = I.context();
    auto ext = ctx->with_extra_fiber(ctx->fresh_name("t@"));
    int ti = static_cast<int>(ext->num_vars() - 1);
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators())
        if (!g.is_zero()) gens.push_back(g.lift(ext));
    gens.push_back(Polynomial::variable(ext, ti) * f.lift(ext) - Polynomial::one(ext));
    return Ideal(ext, std::move(gens)).is_unit();
}

inline bool is_unit_ideal(const Ideal& I) { return I.is_unit(); }

/// Krull dimension of R/I: the maximal size of a variable set independent
/// modulo the leading-term ideal (any cached order; degrevlex preferred).
/// Exact exhaustive search up to 16 variables.
inline DimensionReport dimension(const Ideal& I)
{
    const auto& ctx = I.context();
    const std::size_t n = ctx->num_vars();
    if (I.is_unit()) return {-1, {}};
    if (n > 16)
        throw DimensionNotCertified("dimension not certified beyond 16 variables (got " +
                                    std::to_string(n) + ")");
    const auto ord = MonomialOrder::degrevlex(n);
    std::vector<std::uint32_t> supports;
    for (const auto& g : I.groebner_basis(ord)) {
        if (g.is_zero()) continue;
        const Monomial& m = g.leading_term(ord).mono;
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (m.exp(i)) s |= (1u << i);
        supports.push_back(s);
    }
    // minimal supports suffice
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    std::vector<std::uint32_t> min_sup;
    for (auto s : supports) {
        bool redundant = false;
        for (auto t : min_sup)
            if ((t & s) == t) {
                redundant = true;
                break;
            }
        if (!redundant) min_sup.push_back(s);
    }
    int best = -1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int pc = __builtin_popcount(mask);
        if (pc <= best) continue;
        bool indep = true;
        for (auto s : min_sup)
            if ((s & mask) == s) {
                indep = false;
                break;
            }
        if (indep) {
            best = pc;
            best_mask = mask;
        }
    }
    DimensionReport rep;
    rep.dim = best;
    for (std::size_t i = 0; i < n; ++i)
        if (best_mask & (1u << i)) rep.witness_independent_set.push_back(ctx->name(i));
    return rep;
}

} // namespace chv
