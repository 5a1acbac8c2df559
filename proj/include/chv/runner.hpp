#pragma once

#include <fstream>
#include <sstream>

#include "chv/oracle.hpp"

namespace chv {

/// Parse the printed form of a constructible set back into components over
/// the base context (inverse of ConstructibleSet::to_string on its image).
inline ConstructibleSet parse_constructible(const std::string& text, const ContextPtr& base_ctx)
{
    ConstructibleSet out(base_ctx);
    for (const auto& m : parse_constructible_expr(text, base_ctx)) {
        std::vector<ClosedSet> subs;
        for (const auto& group : m.inequation_groups)
            subs.push_back(ClosedSet(Ideal(base_ctx, group)));
        out.add_normalized(ClosedSet(Ideal(base_ctx, m.equations)), std::move(subs));
    }
    return out;
}

struct RunReport {
    ConstructibleSet result;
    std::string result_text;
    nlohmann::json result_json;
    nlohmann::json stats;                 // aggregate: steps, wall time, node counts
    std::vector<nlohmann::json> events;   // one object per solver step
    std::vector<OracleVerdict> oracle;
    bool orbit_used_fallback = false;
    double wall_ms = 0;
};

inline SolverOptions solver_options(const ProblemSpec& spec)
{
    SolverOptions o;
    o.strategy = spec.options.strategy;
    o.iteration = spec.options.iteration;
    o.seed = spec.options.seed;
    o.hyperplane_stage_budget = spec.options.hyperplane_budget;
    o.threads = spec.options.threads;
    return o;
}

/// Execute a problem: build the working sets, dispatch on the mode, collect
/// statistics events, serialize deterministically and run any requested
/// finite-field checks.
inline RunReport run(const ProblemSpec& spec)
{
    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    SolverOptions opt = solver_options(spec);
    opt.stats_sink = [&rep](const nlohmann::json& ev) { rep.events.push_back(ev); };

    auto base = spec.ctx->base_only();
    ConstructibleSet acc(base);

    switch (spec.mode) {
    case Mode::Projection:
    case Mode::Map: {
        for (const auto& gamma : working_sets(spec)) {
            ConstructibleSet part = constructible_projection(gamma, opt);
            for (const auto& c : part.components()) acc.add(c);
        }
        break;
    }
    case Mode::Orbit: {
        OrbitProblem p = build_orbit_problem(spec.ctx, spec.orbits.at(0));
        OrbitResult r = orbit_image(p, opt);
        rep.orbit_used_fallback = r.used_fallback;
        rep.events.push_back({{"event", "orbit"},
                              {"used_jacobian", r.used_jacobian},
                              {"used_fallback", r.used_fallback},
                              {"translations_used", r.translations_used},
                              {"closure", r.closure.to_string()},
                              {"first_hull", r.first_hull.to_string()},
                              {"final_hull", r.final_hull.to_string()}});
        acc = std::move(r.image);
        break;
    }
    case Mode::Stratification: {
        std::vector<OrbitProblem> ps;
        for (const auto& ob : spec.orbits) ps.push_back(build_orbit_problem(spec.ctx, ob));
        auto strata = orbit_stratification(ps);
        for (auto& s : strata) {
            rep.events.push_back({{"event", "stratum"},
                                  {"closure", s.closure.to_string()},
                                  {"contains", s.contains},
                                  {"points", s.points}});
            acc.add(s.orbit);
        }
        break;
    }
    }

    rep.result = std::move(acc);
    rep.result_text = rep.result.to_string();
    rep.result_json = rep.result.to_json();
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    for (auto prime : spec.options.oracle_primes) {
        OracleOptions oo;
        oo.prime = prime;
        oo.seed = spec.options.seed + 1;
        rep.oracle.push_back(point_oracle(spec, rep.result, oo));
    }

    std::uint64_t gb_calls = 0;
    for (const auto& ev : rep.events)
        if (ev.contains("gb_calls")) gb_calls += ev["gb_calls"].get<std::uint64_t>();
    rep.stats = {{"mode", mode_name(spec.mode)},
                 {"steps", rep.events.size()},
                 {"gb_calls", gb_calls},
                 {"wall_ms", rep.wall_ms},
                 {"components", rep.result.components().size()}};
    nlohmann::json jor = nlohmann::json::array();
    for (const auto& v : rep.oracle)
        jor.push_back({{"prime", v.prime},
                       {"agree", v.agree()},
                       {"forward_checked", v.forward_checked},
                       {"forward_hits", v.forward_hits},
                       {"base_checked", v.base_checked},
                       {"claimed", v.claimed},
                       {"claimed_with_fiber", v.claimed_with_fiber},
                       {"claimed_without_fiber", v.claimed_without_fiber},
                       {"contradictions", v.contradictions},
                       {"exhaustive_source", v.exhaustive_source},
                       {"exhaustive_fibers", v.exhaustive_fibers}});
    rep.stats["oracle"] = jor;
    return rep;
}

inline ProblemSpec load_problem_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

// ---------------------------------------------------------------------------
// corpus runner
// ---------------------------------------------------------------------------

struct CorpusEntry {
    std::string name;
    bool slow = false; // skipped unless explicitly included
};

inline const std::vector<CorpusEntry>& corpus_entries()
{
    static const std::vector<CorpusEntry> entries = {
        {"ex2_1", false},    {"ex4_3", false},    {"ex4_4", false},  {"ex4_7", false},
        {"ex4_8", false},    {"ex4_11", false},   {"ex5_1", false},  {"ex5_4_m2", false},
        {"ex5_4_m3", false}, {"ex5_4_m4", false}, {"ex5_4_m5", false},
        {"ex5_4_m6", false}, {"ex5_4_m7", false}, {"ex5_4_m8", false},
        {"ex5_7", false},    {"ex6_4", false},    {"ex7_9", false},
        {"umps223", false},  {"umps224", true},
    };
    return entries;
}

struct CorpusOutcome {
    std::string name;
    bool ran = false;
    bool matched = false;
    bool oracle_ok = false;
    bool skipped = false;
    double wall_ms = 0;
    std::string detail;
};

/// Run one corpus entry against its golden output. With the default
/// strategy the serialized result must match the golden text exactly; other
/// strategies are compared set-theoretically (presentation match against
/// the parsed golden, plus the finite-field oracle).
inline CorpusOutcome run_corpus_entry(const std::string& corpus_dir, const CorpusEntry& entry,
                                      const ProblemOptions& overrides, bool apply_overrides)
{
    CorpusOutcome out;
    out.name = entry.name;
    ProblemSpec spec = load_problem_file(corpus_dir + "/" + entry.name + ".prob");
    bool strategy_changed = false;
    if (apply_overrides) {
        strategy_changed = overrides.strategy != spec.options.strategy ||
                           overrides.iteration != spec.options.iteration;
        auto primes = spec.options.oracle_primes;
        spec.options = overrides;
        if (spec.options.oracle_primes.empty()) spec.options.oracle_primes = primes;
    }

    std::ifstream gf(corpus_dir + "/golden/" + entry.name + ".txt");
    if (!gf) {
        out.skipped = true;
        out.detail = "no golden output";
        return out;
    }
    std::stringstream gs;
    gs << gf.rdbuf();
    std::string golden = problem_detail::strip(gs.str());

    RunReport rep = run(spec);
    out.ran = true;
    out.wall_ms = rep.wall_ms;

    if (!strategy_changed) {
        out.matched = problem_detail::strip(rep.result_text) == golden;
        if (!out.matched)
            out.detail = "expected: " + golden + "\n  actual:   " + rep.result_text;
    } else {
        ConstructibleSet want = parse_constructible(golden, spec.ctx->base_only());
        out.matched = presentations_match(rep.result, want);
        if (!out.matched) out.detail = "set mismatch vs golden (strategy override)";
    }
    out.oracle_ok = true;
    for (const auto& v : rep.oracle)
        if (!v.agree()) {
            out.oracle_ok = false;
            out.detail += " oracle disagreement at p=" + std::to_string(v.prime);
        }
    return out;
}

} // namespace chv
