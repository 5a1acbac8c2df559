#pragma once

// Test-only independent oracles: Macaulay-matrix ideal membership, linear
// algebra over the monomial basis, brute-force dimension for monomial
// ideals, and deterministic random generators. Everything here is kept
// independent of the Groebner engine it cross-checks.

#include <cstdint>
#include <map>
#include <vector>

#include "chv/matrix.hpp"
#include "chv/polynomial.hpp"

namespace chvtest {

using namespace chv;

inline void collect_monomials(std::vector<Monomial>& out, std::vector<std::uint16_t>& cur,
                              std::size_t var, unsigned budget, const ContextPtr& ctx)
{
    if (var == ctx->num_vars()) {
        out.emplace_back(cur, ctx->num_base());
        return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
        cur[var] = static_cast<std::uint16_t>(e);
        collect_monomials(out, cur, var + 1, budget - e, ctx);
    }
    cur[var] = 0;
}

inline std::vector<Monomial> monomials_up_to(const ContextPtr& ctx, unsigned d)
{
    std::vector<Monomial> out;
    std::vector<std::uint16_t> cur(ctx->num_vars(), 0);
    collect_monomials(out, cur, 0, d, ctx);
    return out;
}

/// Membership of f in <gens> detected by linear algebra on products m*g with
/// deg(m) <= mult_deg. A positive answer is a certificate; a negative answer
/// only means "not visible at this multiplier degree".
inline bool macaulay_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                            unsigned mult_deg)
{
    const auto& ctx = f.context();
    std::vector<Polynomial> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& m : monomials_up_to(ctx, mult_deg))
            rows.push_back(g.mul_term(m, mpq_class(1)));
    }
    if (rows.empty()) return f.is_zero();

    // column basis: all monomials occurring
    std::map<std::vector<std::uint16_t>, std::size_t> col;
    auto touch = [&](const Polynomial& p) {
        for (const auto& t : p.terms())
            col.emplace(t.mono.exps(), col.size());
    };
    for (const auto& r : rows) touch(r);
    touch(f);

    QMatrix A(rows.size(), col.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms()) A.at(i, col[t.mono.exps()]) = t.coeff;
    QMatrix Af(rows.size() + 1, col.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms()) Af.at(i, col[t.mono.exps()]) = t.coeff;
    for (const auto& t : f.terms()) Af.at(rows.size(), col[t.mono.exps()]) = t.coeff;
    return A.rank() == Af.rank();
}

/// All base-only elements (up to the degree truncation) that the Macaulay
/// span exposes: order columns fiber-first, reduce, and keep rows whose
/// support is entirely in base monomials.
inline std::vector<Polynomial> macaulay_base_only_elements(const std::vector<Polynomial>& gens,
                                                           const ContextPtr& ctx,
                                                           unsigned mult_deg)
{
    std::vector<Polynomial> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& m : monomials_up_to(ctx, mult_deg))
            rows.push_back(g.mul_term(m, mpq_class(1)));
    }
    if (rows.empty()) return {};

    std::vector<std::vector<std::uint16_t>> fiber_cols, base_cols;
    std::map<std::vector<std::uint16_t>, char> seen;
    for (const auto& r : rows)
        for (const auto& t : r.terms()) {
            if (seen.emplace(t.mono.exps(), 1).second) {
                if (t.mono.fiber_degree() > 0)
                    fiber_cols.push_back(t.mono.exps());
                else
                    base_cols.push_back(t.mono.exps());
            }
        }
    std::map<std::vector<std::uint16_t>, std::size_t> col;
    for (const auto& c : fiber_cols) col.emplace(c, col.size());
    for (const auto& c : base_cols) col.emplace(c, col.size());
    const std::size_t nfiber_cols = fiber_cols.size();

    QMatrix A(rows.size(), col.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms()) A.at(i, col[t.mono.exps()]) = t.coeff;
    A.row_echelon();

    std::vector<std::vector<std::uint16_t>> col_names(col.size());
    for (const auto& [exps, idx] : col) col_names[idx] = exps;

    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        bool any = false, base_only = true;
        std::vector<Term> terms;
        for (std::size_t c = 0; c < col.size(); ++c) {
            if (A.at(i, c) == 0) continue;
            any = true;
            if (c < nfiber_cols) {
                base_only = false;
                break;
            }
            terms.push_back({Monomial(col_names[c], ctx->num_base()), A.at(i, c)});
        }
        if (any && base_only) out.push_back(Polynomial::from_terms(ctx, std::move(terms)));
    }
    return out;
}

/// Brute-force Krull dimension of a monomial ideal: max |S| over variable
/// subsets S such that no generator's support is contained in S.
inline int brute_force_monomial_dimension(const ContextPtr& ctx, const std::vector<Monomial>& gens)
{
    const std::size_t n = ctx->num_vars();
    for (const auto& g : gens)
        if (g.is_one()) return -1;
    int best = -1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool indep = true;
        for (const auto& g : gens) {
            bool contained = true;
            for (std::size_t i = 0; i < n && contained; ++i)
                if (g.exp(i) && !(mask & (1u << i))) contained = false;
            if (contained) {
                indep = false;
                break;
            }
        }
        if (indep) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

/// All integer points with coordinates in [-radius, radius], as exact
/// rationals (pointwise comparison grid for base spaces).
inline std::vector<std::vector<mpq_class>> sample_grid(std::size_t dim, long radius)
{
    std::vector<std::vector<mpq_class>> pts;
    std::vector<long> cur(dim, -radius);
    for (;;) {
        pts.emplace_back(cur.begin(), cur.end());
        std::size_t i = 0;
        while (i < dim && ++cur[i] > radius) cur[i++] = -radius;
        if (i == dim) break;
    }
    return pts;
}

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next()
    {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline Monomial random_monomial(Rng& rng, const ContextPtr& ctx, unsigned max_deg)
{
    std::vector<std::uint16_t> e(ctx->num_vars(), 0);
    unsigned budget = static_cast<unsigned>(rng.below(max_deg + 1));
    for (unsigned k = 0; k < budget; ++k) e[rng.below(ctx->num_vars())]++;
    return Monomial(std::move(e), ctx->num_base());
}

inline Polynomial random_poly(Rng& rng, const ContextPtr& ctx, unsigned max_deg,
                              unsigned max_terms)
{
    std::vector<Term> terms;
    unsigned nt = 1 + static_cast<unsigned>(rng.below(max_terms));
    for (unsigned i = 0; i < nt; ++i) {
        long num = static_cast<long>(rng.below(9)) - 4;
        if (num == 0) num = 1;
        unsigned den = 1 + static_cast<unsigned>(rng.below(3));
        mpq_class c(num, den);
        c.canonicalize();
        terms.push_back({random_monomial(rng, ctx, max_deg), c});
    }
    return Polynomial::from_terms(ctx, std::move(terms));
}

} // namespace chvtest
