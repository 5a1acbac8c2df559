#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "chv/polynomial.hpp"
#include "chv/stats.hpp"

namespace chv {

namespace gb_detail {

// Integer-coefficient polynomial, terms descending w.r.t. the active order,
// primitive (content 1) with positive leading coefficient. Keeping the
// arithmetic in mpz avoids the gcd churn of rational normal forms.
struct IPoly {
    std::vector<Monomial> monos;
    std::vector<mpz_class> coeffs;
    std::uint32_t sugar = 0;

    bool zero() const { return monos.empty(); }
    const Monomial& lt() const { return monos.front(); }
    const mpz_class& lc() const { return coeffs.front(); }
};

inline void strip_content(IPoly& p)
{
    if (p.zero()) return;
    mpz_class g = 0;
    for (const auto& c : p.coeffs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (sgn(p.coeffs.front()) < 0) g = -g;
    if (g != 1 && g != 0)
        for (auto& c : p.coeffs) c /= g;
}

inline IPoly from_rational(const Polynomial& f, const MonomialOrder& ord)
{
    IPoly p;
    if (f.is_zero()) return p;
    mpz_class den_lcm = 1;
    for (const auto& t : f.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    std::vector<std::size_t> idx(f.terms().size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return ord.greater(f.terms()[a].mono, f.terms()[b].mono);
    });
    p.monos.reserve(idx.size());
    p.coeffs.reserve(idx.size());
    for (std::size_t i : idx) {
        const auto& t = f.terms()[i];
        p.monos.push_back(t.mono);
        p.coeffs.push_back(mpz_class(t.coeff.get_num() * (den_lcm / t.coeff.get_den())));
    }
    p.sugar = f.total_degree();
    strip_content(p);
    return p;
}

inline Polynomial to_monic_rational(const IPoly& p, const ContextPtr& ctx)
{
    std::vector<Term> terms;
    terms.reserve(p.monos.size());
    mpq_class lc(p.coeffs.front());
    for (std::size_t i = 0; i < p.monos.size(); ++i) {
        mpq_class c(p.coeffs[i]);
        c /= lc;
        terms.push_back({p.monos[i], std::move(c)});
    }
    return Polynomial::from_terms(ctx, std::move(terms));
}

// r := a*p - b*(m * g), merged in descending order.
inline IPoly combine(const IPoly& p, const mpz_class& a, const mpz_class& b, const Monomial& m,
                     const IPoly& g, const MonomialOrder& ord)
{
    IPoly r;
    r.monos.reserve(p.monos.size() + g.monos.size());
    r.coeffs.reserve(p.monos.size() + g.monos.size());
    std::size_t i = 0, j = 0;
    while (i < p.monos.size() || j < g.monos.size()) {
        if (j == g.monos.size()) {
            r.monos.push_back(p.monos[i]);
            r.coeffs.push_back(a * p.coeffs[i]);
            ++i;
            continue;
        }
        Monomial gm = g.monos[j] * m;
        if (i == p.monos.size()) {
            r.monos.push_back(std::move(gm));
            r.coeffs.push_back(-b * g.coeffs[j]);
            ++j;
            continue;
        }
        int c = ord.compare(p.monos[i], gm);
        if (c > 0) {
            r.monos.push_back(p.monos[i]);
            r.coeffs.push_back(a * p.coeffs[i]);
            ++i;
        } else if (c < 0) {
            r.monos.push_back(std::move(gm));
            r.coeffs.push_back(-b * g.coeffs[j]);
            ++j;
        } else {
            mpz_class nc = a * p.coeffs[i] - b * g.coeffs[j];
            if (nc != 0) {
                r.monos.push_back(p.monos[i]);
                r.coeffs.push_back(std::move(nc));
            }
            ++i;
            ++j;
        }
    }
    r.sugar = std::max(p.sugar, g.sugar + m.total_degree());
    return r;
}

/// Fully reduce p modulo the elements of `basis` flagged in `use`,
/// fraction-free. Every term of the result is irreducible.
inline IPoly reduce(IPoly p, const std::vector<IPoly>& basis, const std::vector<char>& use,
                    const MonomialOrder& ord)
{
    std::size_t k = 0;
    std::size_t steps = 0;
    while (k < p.monos.size()) {
        bool hit = false;
        for (std::size_t gi = 0; gi < basis.size(); ++gi) {
            if (!use[gi]) continue;
            const IPoly& g = basis[gi];
            if (!divides(g.lt(), p.monos[k])) continue;
            Monomial m = quotient(p.monos[k], g.lt());
            mpz_class d;
            mpz_gcd(d.get_mpz_t(), p.coeffs[k].get_mpz_t(), g.lc().get_mpz_t());
            mpz_class a = g.lc() / d;
            mpz_class b = p.coeffs[k] / d;
            if (sgn(a) < 0) {
                a = -a;
                b = -b;
            }
            p = combine(p, a, b, m, g, ord);
            hit = true;
            if (++steps % 64 == 0) strip_content(p);
            break;
        }
        if (!hit) ++k;
    }
    strip_content(p);
    return p;
}

struct SPair {
    std::size_t i, j; // j is the younger element
    Monomial lcm_m;
    std::uint32_t sugar;
};

} // namespace gb_detail

/// S-polynomial over QQ (verification helper; the engine builds its own).
inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord)
{
    if (f.is_zero() || g.is_zero()) throw std::domain_error("s_polynomial of zero");
    const Term& tf = f.leading_term(ord);
    const Term& tg = g.leading_term(ord);
    std::size_t nbase = f.context()->num_base();
    Monomial L = lcm(tf.mono, tg.mono, nbase);
    Polynomial a = f.mul_term(quotient(L, tf.mono), mpq_class(1) / tf.coeff);
    Polynomial b = g.mul_term(quotient(L, tg.mono), mpq_class(1) / tg.coeff);
    return a - b;
}

/// Remainder of multivariate division of f by the family gs w.r.t. ord.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& gs,
                              const MonomialOrder& ord)
{
    if (f.is_zero()) return f;
    Polynomial rem = Polynomial::zero(f.context());
    Polynomial cur = f;
    while (!cur.is_zero()) {
        const Term& lt = cur.leading_term(ord);
        bool hit = false;
        for (const auto& g : gs) {
            if (g.is_zero()) continue;
            const Term& gt = g.leading_term(ord);
            if (!divides(gt.mono, lt.mono)) continue;
            cur = cur - g.mul_term(quotient(lt.mono, gt.mono), lt.coeff / gt.coeff);
            hit = true;
            break;
        }
        if (!hit) {
            Polynomial t = Polynomial::term(f.context(), lt.mono, lt.coeff);
            rem += t;
            cur -= t;
        }
    }
    return rem;
}

/// Reduced Groebner basis of the given generators w.r.t. ord: monic leading
/// coefficients, fully interreduced, sorted ascending by leading term.
/// Buchberger with the Gebauer-Moeller pair criteria and sugar selection.
inline std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens,
                                          const MonomialOrder& ord)
{
    using namespace gb_detail;
    if (auto* c = active_counters()) c->gb_calls++;

    ContextPtr ctx;
    std::vector<IPoly> basis;
    for (const auto& g : gens) {
        if (!ctx) ctx = g.context();
        if (g.is_zero()) continue;
        basis.push_back(from_rational(g, ord));
    }
    if (!ctx || basis.empty()) return {};
    const std::size_t nbase = ctx->num_base();

    // alive = used for new pairs, reduction, and the final minimal basis.
    // Retired elements stay in `basis`: pending pairs referencing them are
    // still processed (the pair criteria assume that).
    std::vector<char> alive(basis.size(), 1);
    std::vector<SPair> pairs;

    auto push_pairs_for = [&](std::size_t t) {
        std::vector<SPair> fresh;
        for (std::size_t i = 0; i < t; ++i) {
            if (!alive[i]) continue;
            Monomial L = lcm(basis[i].lt(), basis[t].lt(), nbase);
            std::uint32_t sug = std::max(
                basis[i].sugar + L.total_degree() - basis[i].lt().total_degree(),
                basis[t].sugar + L.total_degree() - basis[t].lt().total_degree());
            fresh.push_back({i, t, std::move(L), sug});
        }
        std::vector<char> keep(fresh.size(), 1);
        // M-criterion: drop (i,t) when another (j,t) has strictly dividing lcm
        for (std::size_t a = 0; a < fresh.size(); ++a)
            for (std::size_t b = 0; b < fresh.size() && keep[a]; ++b) {
                if (a == b || !keep[b]) continue;
                if (fresh[b].lcm_m != fresh[a].lcm_m && divides(fresh[b].lcm_m, fresh[a].lcm_m))
                    keep[a] = 0;
            }
        // F-criterion: one representative per lcm, preferring a coprime pair
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            if (!keep[a]) continue;
            bool have_coprime = coprime(basis[fresh[a].i].lt(), basis[t].lt());
            for (std::size_t b = a + 1; b < fresh.size(); ++b) {
                if (!keep[b] || fresh[b].lcm_m != fresh[a].lcm_m) continue;
                keep[b] = 0;
                if (!have_coprime && coprime(basis[fresh[b].i].lt(), basis[t].lt())) {
                    fresh[a].i = fresh[b].i;
                    have_coprime = true;
                }
            }
        }
        // B-criterion: coprime leading terms reduce to zero
        for (std::size_t a = 0; a < fresh.size(); ++a)
            if (keep[a] && coprime(basis[fresh[a].i].lt(), basis[t].lt())) keep[a] = 0;
        // prune old pairs whose lcm the new leading term strictly improves
        std::vector<SPair> kept_old;
        kept_old.reserve(pairs.size());
        for (auto& pr : pairs) {
            if (divides(basis[t].lt(), pr.lcm_m) &&
                lcm(basis[pr.i].lt(), basis[t].lt(), nbase) != pr.lcm_m &&
                lcm(basis[pr.j].lt(), basis[t].lt(), nbase) != pr.lcm_m)
                continue;
            kept_old.push_back(std::move(pr));
        }
        pairs = std::move(kept_old);
        for (std::size_t a = 0; a < fresh.size(); ++a)
            if (keep[a]) pairs.push_back(std::move(fresh[a]));
    };

    auto pair_less = [&](const SPair& a, const SPair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = ord.compare(a.lcm_m, b.lcm_m);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
    };

    for (std::size_t t = 1; t < basis.size(); ++t) push_pairs_for(t);

    while (!pairs.empty()) {
        auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
        SPair pr = std::move(*it);
        *it = std::move(pairs.back());
        pairs.pop_back();

        const IPoly& f = basis[pr.i];
        const IPoly& g = basis[pr.j];
        mpz_class d;
        mpz_gcd(d.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());
        Monomial mf = quotient(pr.lcm_m, f.lt());
        Monomial mg = quotient(pr.lcm_m, g.lt());
        IPoly fs;
        fs.monos.reserve(f.monos.size());
        fs.coeffs.reserve(f.monos.size());
        mpz_class cf = g.lc() / d;
        for (std::size_t k = 0; k < f.monos.size(); ++k) {
            fs.monos.push_back(f.monos[k] * mf);
            fs.coeffs.push_back(cf * f.coeffs[k]);
        }
        fs.sugar = f.sugar + mf.total_degree();
        IPoly s = combine(fs, 1, f.lc() / d, mg, g, ord);
        if (auto* c = active_counters()) c->spairs_reduced++;
        s = reduce(std::move(s), basis, alive, ord);
        if (s.zero()) continue;

        std::size_t t = basis.size();
        basis.push_back(std::move(s));
        alive.push_back(1);
        push_pairs_for(t);
        for (std::size_t i = 0; i < t; ++i)
            if (alive[i] && divides(basis[t].lt(), basis[i].lt())) alive[i] = 0;
        if (auto* c = active_counters())
            c->max_basis_size = std::max<std::uint64_t>(c->max_basis_size, basis.size());
    }

    // minimal basis among the survivors (equal LTs: keep the first)
    std::vector<char> minimal = alive;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!minimal[i]) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !minimal[j]) continue;
            if (basis[j].lt() == basis[i].lt()) {
                minimal[std::max(i, j)] = 0;
                if (std::max(i, j) == i) break;
            } else if (divides(basis[j].lt(), basis[i].lt())) {
                minimal[i] = 0;
                break;
            }
        }
    }

    // tail-reduce each survivor against the others
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!minimal[i]) continue;
        std::vector<char> others = minimal;
        others[i] = 0;
        IPoly r = reduce(basis[i], basis, others, ord);
        out.push_back(to_monic_rational(r, ctx));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& x, const Polynomial& y) {
        return ord.less(x.leading_term(ord).mono, y.leading_term(ord).mono);
    });
    return out;
}

} // namespace chv
