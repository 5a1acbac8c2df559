#pragma once

#include <cstdint>
#include <vector>

#include "chv/problem.hpp"

namespace chv {

struct BadReductionPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace fp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return (static_cast<unsigned __int128>(a) * b) % p;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return powmod(a % p, p - 2, p); }

inline std::uint64_t reduce_rational(const mpq_class& q, std::uint64_t p)
{
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class dm = den % pz;
    if (dm == 0) throw BadReductionPrime("denominator divisible by the oracle prime");
    mpz_class nm = num % pz;
    if (nm < 0) nm += pz;
    std::uint64_t n = nm.get_ui(), d = dm.get_ui();
    return mul(n, inv(d, p), p);
}

/// Evaluate f at a point of F_p^n (coordinates as residues).
inline std::uint64_t eval(const Polynomial& f, const std::vector<std::uint64_t>& pt,
                          std::uint64_t p)
{
    std::uint64_t acc = 0;
    for (const auto& t : f.terms()) {
        std::uint64_t v = reduce_rational(t.coeff, p);
        for (std::size_t i = 0; i < pt.size(); ++i)
            if (t.mono.exp(i)) v = mul(v, powmod(pt[i], t.mono.exp(i), p), p);
        acc = add(acc, v, p);
    }
    return acc;
}

inline void check_good_reduction(const Polynomial& f, std::uint64_t p)
{
    mpz_class pz(static_cast<unsigned long>(p));
    for (const auto& t : f.terms())
        if (t.coeff.get_den() % pz == 0)
            throw BadReductionPrime("bad-reduction prime " + std::to_string(p));
}

} // namespace fp

/// Membership in a constructible set over F_p.
inline bool contains_point_mod_p(const ConstructibleSet& s, const std::vector<std::uint64_t>& pt,
                                 std::uint64_t p)
{
    for (const auto& c : s.components()) {
        bool in = true;
        for (const auto& g : c.positive.ideal().generators())
            if (fp::eval(g, pt, p) != 0) {
                in = false;
                break;
            }
        if (!in) continue;
        for (const auto& d : c.subtrahends) {
            bool on_sub = true;
            for (const auto& g : d.ideal().generators())
                if (fp::eval(g, pt, p) != 0) {
                    on_sub = false;
                    break;
                }
            if (on_sub) {
                in = false;
                break;
            }
        }
        if (in) return true;
    }
    return false;
}

struct OracleOptions {
    std::uint64_t prime = 10007;
    std::uint64_t seed = 1;
    std::uint64_t max_enumeration = 300000; // exhaustive when the point count fits
    std::uint64_t samples = 400;            // otherwise sampled
    std::uint64_t fiber_work = 250000;      // cap on sampled-base fiber enumerations
};

/// Outcome of the finite-field comparison. The binding notion of agreement
/// is sound under reduction mod a good prime: images of F_p-points of the
/// working sets must satisfy the claimed description, and points claimed
/// off the image must have empty F_p-fibers. Fiber existence over claimed
/// points is reported as coverage but not binding: a surjection over the
/// algebraic closure can miss F_p-points of its image (rational solvability
/// is not preserved), so `claimed_without_fiber` may legitimately be
/// positive.
struct OracleVerdict {
    std::uint64_t prime = 0;
    bool exhaustive_source = false;
    bool exhaustive_fibers = false;
    std::uint64_t forward_checked = 0, forward_hits = 0;
    std::uint64_t base_checked = 0, claimed = 0;
    std::uint64_t claimed_with_fiber = 0, claimed_without_fiber = 0;
    std::uint64_t contradictions = 0; // claimed-off-image points with a fiber

    bool agree() const { return forward_checked == forward_hits && contradictions == 0; }
};

namespace oracle_detail {

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next()
    {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

inline bool next_tuple(std::vector<std::uint64_t>& t, std::uint64_t p)
{
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == p) t[i++] = 0;
    return i < t.size();
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e, std::uint64_t cap)
{
    std::uint64_t r = 1;
    while (e--) {
        if (r > cap / b) return cap + 1;
        r *= b;
    }
    return r;
}

} // namespace oracle_detail

/// Cross-check a computed constructible image against direct evaluation
/// over F_p. Forward direction (map mode): source points within the domain
/// and off the denominators map into the claimed set. Fiber direction (all
/// modes): enumerate or sample fibers of the working sets over base points
/// and compare with the claimed membership.
inline OracleVerdict point_oracle(const ProblemSpec& spec, const ConstructibleSet& result,
                                  const OracleOptions& opt = {})
{
    const std::uint64_t p = opt.prime;
    OracleVerdict v;
    v.prime = p;

    std::vector<ClosedSet> gammas;
    if (spec.mode == Mode::Orbit || spec.mode == Mode::Stratification) {
        for (const auto& ob : spec.orbits)
            gammas.push_back(build_orbit_problem(spec.ctx, ob).graph);
    } else {
        gammas = working_sets(spec);
    }
    for (const auto& g : gammas)
        for (const auto& gen : g.ideal().generators()) fp::check_good_reduction(gen, p);
    for (const auto& c : result.components()) {
        for (const auto& g : c.positive.ideal().generators()) fp::check_good_reduction(g, p);
        for (const auto& d : c.subtrahends)
            for (const auto& g : d.ideal().generators()) fp::check_good_reduction(g, p);
    }

    const std::size_t nbase = spec.ctx->num_base();
    oracle_detail::SplitMix rng{opt.seed ^ (p << 16)};

    // ---- forward direction: push source points through the map ----
    if (spec.mode == Mode::Map || spec.mode == Mode::Orbit ||
        spec.mode == Mode::Stratification) {
        // sources: the map components, plus (for orbits) the fiber-only
        // group relations the source points must satisfy; a source whose
        // relations mix in base variables cannot be sampled soundly and is
        // skipped
        struct Source {
            const std::vector<MapComponent>* map;
            std::vector<const Polynomial*> constraints;
        };
        std::vector<Source> maps;
        if (spec.mode == Mode::Map) {
            maps.push_back({&spec.map, {}});
        } else {
            for (const auto& ob : spec.orbits) {
                if (ob.map.empty()) continue;
                Source src{&ob.map, {}};
                bool usable = true;
                for (const auto& r : ob.extra_relations) {
                    bool fiber_only = true;
                    for (const auto& t : r.terms())
                        if (t.mono.base_degree() > 0) {
                            fiber_only = false;
                            break;
                        }
                    if (!fiber_only) {
                        usable = false;
                        break;
                    }
                    src.constraints.push_back(&r);
                }
                if (usable) maps.push_back(std::move(src));
            }
        }
        auto source_ctx = RingContext::make({}, spec.ctx->fiber_vars());
        const std::size_t n = source_ctx->num_vars();
        std::uint64_t total = oracle_detail::ipow(p, n, opt.max_enumeration);
        bool exhaustive = total <= opt.max_enumeration;
        v.exhaustive_source = exhaustive;

        for (const auto& src : maps) {
            const auto& map = *src.map;
            for (const auto& c : map) {
                fp::check_good_reduction(c.p, p);
                fp::check_good_reduction(c.q, p);
            }
            auto push_through = [&](const std::vector<std::uint64_t>& x) {
                // group relations (fiber-only, evaluated with dummy base 0s)
                if (!src.constraints.empty()) {
                    std::vector<std::uint64_t> full(spec.ctx->num_vars(), 0);
                    for (std::size_t i = 0; i < n; ++i) full[nbase + i] = x[i];
                    for (const auto* r : src.constraints)
                        if (fp::eval(*r, full, p) != 0) return;
                }
                // respect the declared domain and the denominators
                if (!spec.domain.empty()) {
                    bool in_domain = false;
                    for (const auto& member : spec.domain) {
                        bool ok = true;
                        for (const auto& e : member.equations)
                            if (fp::eval(e, x, p) != 0) ok = false;
                        for (const auto& group : member.inequation_groups) {
                            bool off = false;
                            for (const auto& q : group)
                                if (fp::eval(q, x, p) != 0) off = true;
                            if (!off) ok = false;
                        }
                        if (ok) {
                            in_domain = true;
                            break;
                        }
                    }
                    if (!in_domain) return;
                }
                std::vector<std::uint64_t> b(nbase);
                for (std::size_t i = 0; i < nbase; ++i) {
                    std::uint64_t qv = fp::eval(map[i].q, x, p);
                    if (qv == 0) return; // off the rational map's domain
                    b[i] = fp::mul(fp::eval(map[i].p, x, p), fp::inv(qv, p), p);
                }
                v.forward_checked++;
                if (contains_point_mod_p(result, b, p)) v.forward_hits++;
            };
            if (exhaustive) {
                std::vector<std::uint64_t> x(n, 0);
                do {
                    push_through(x);
                } while (oracle_detail::next_tuple(x, p));
            } else {
                for (std::uint64_t k = 0; k < opt.samples; ++k) {
                    std::vector<std::uint64_t> x(n);
                    for (auto& xi : x) xi = rng.next() % p;
                    push_through(x);
                }
            }
        }
    }

    // ---- fiber direction: solve the systems over sampled base points ----
    {
        std::uint64_t base_total = oracle_detail::ipow(p, nbase, opt.max_enumeration);
        bool base_exhaustive = base_total <= opt.max_enumeration;

        // fibers are enumerated exhaustively only when every working set's
        // fiber space is small enough
        bool fibers_ok = true;
        std::uint64_t fiber_budget = opt.max_enumeration;
        for (const auto& g : gammas) {
            std::size_t nf = g.context()->num_fiber();
            if (oracle_detail::ipow(p, nf, fiber_budget) > fiber_budget) fibers_ok = false;
        }
        v.exhaustive_fibers = fibers_ok;

        auto has_fiber = [&](const std::vector<std::uint64_t>& b) -> bool {
            for (const auto& g : gammas) {
                const auto& ctx = g.context();
                std::size_t nf = ctx->num_fiber();
                std::vector<std::uint64_t> full(ctx->num_vars(), 0);
                for (std::size_t i = 0; i < nbase; ++i) full[i] = b[i];
                std::vector<std::uint64_t> x(nf, 0);
                bool more = true;
                while (more) {
                    for (std::size_t i = 0; i < nf; ++i) full[nbase + i] = x[i];
                    bool on = true;
                    for (const auto& gen : g.ideal().generators())
                        if (fp::eval(gen, full, p) != 0) {
                            on = false;
                            break;
                        }
                    if (on) return true;
                    more = oracle_detail::next_tuple(x, p);
                }
            }
            return false;
        };

        auto check_base_point = [&](const std::vector<std::uint64_t>& b) {
            v.base_checked++;
            bool claimed = contains_point_mod_p(result, b, p);
            if (claimed) v.claimed++;
            if (!fibers_ok) return;
            bool fiber = has_fiber(b);
            if (claimed && fiber) v.claimed_with_fiber++;
            if (claimed && !fiber) v.claimed_without_fiber++;
            if (!claimed && fiber) v.contradictions++;
        };

        std::uint64_t fiber_total = 1;
        for (const auto& g : gammas)
            fiber_total = std::max(fiber_total,
                                   oracle_detail::ipow(p, g.context()->num_fiber(),
                                                       opt.max_enumeration));
        if (base_exhaustive && fibers_ok &&
            base_total * fiber_total <= opt.max_enumeration * 8) {
            std::vector<std::uint64_t> b(nbase, 0);
            do {
                check_base_point(b);
            } while (oracle_detail::next_tuple(b, p));
        } else {
            // keep the total fiber-enumeration work bounded
            std::uint64_t nsamples = opt.samples;
            if (fibers_ok)
                nsamples = std::min<std::uint64_t>(
                    nsamples, std::max<std::uint64_t>(4, opt.fiber_work / fiber_total));
            for (std::uint64_t k = 0; k < nsamples; ++k) {
                std::vector<std::uint64_t> b(nbase);
                for (auto& bi : b) bi = rng.next() % p;
                check_base_point(b);
            }
        }
    }
    return v;
}

} // namespace chv
