#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chv/orbits.hpp"
#include "chv/parser.hpp"
#include "chv/solver.hpp"

namespace chv {

enum class Mode { Projection, Map, Orbit, Stratification };

/// One component of a (rational) map: b_i = p_i / q_i, with q_i = 1 for
/// polynomial maps. Components live in the source (fiber-variable) part of
/// the full ring.
struct MapComponent {
    Polynomial p, q;
};

/// A member of a constructible domain over the source space:
/// V(equations) \ V(ineq_group_1) \ ... \ V(ineq_group_a).
struct DomainMember {
    std::vector<Polynomial> equations;
    std::vector<std::vector<Polynomial>> inequation_groups;
};

struct OrbitInput {
    std::vector<MapComponent> map;           // components of the orbit morphism
    std::vector<Polynomial> extra_relations; // group relations etc., full ring
    std::vector<mpq_class> point;            // β
    std::vector<mpq_class> identity;         // ξ
    std::vector<Translation> translations;
    bool injective = false;
};

struct ProblemOptions {
    Strategy strategy = Strategy::Infinity;
    Iteration iteration = Iteration::Graph;
    std::uint64_t seed = 0;
    unsigned hyperplane_budget = 8;
    bool saturate_graph = false;
    std::vector<unsigned long> oracle_primes;
    int threads = 1;
};

struct ProblemSpec {
    Mode mode = Mode::Projection;
    ContextPtr ctx; // the full ring (base = target space, fiber = source space)
    std::vector<Polynomial> ideal_gens;      // projection mode
    std::vector<MapComponent> map;           // map mode
    std::vector<DomainMember> domain;        // optional, over the source space
    std::vector<OrbitInput> orbits;          // orbit: one entry; stratification: many
    ProblemOptions options;
};

inline const char* mode_name(Mode m)
{
    switch (m) {
    case Mode::Projection: return "projection";
    case Mode::Map: return "map";
    case Mode::Orbit: return "orbit";
    case Mode::Stratification: return "stratification";
    }
    return "?";
}

/// The graph ideal <q_i b_i - p_i> of a rational map in the full ring; with
/// `saturate_graph`, a fresh Rabinowitsch variable restricts the cover to
/// the locus where every q_i is nonzero.
inline ClosedSet build_graph_ideal(const ContextPtr& ctx, const std::vector<MapComponent>& map,
                                   bool saturate_graph)
{
    if (map.size() != ctx->num_base())
        throw std::invalid_argument("map component count must equal the number of base variables");
    Polynomial qprod = Polynomial::one(ctx);
    for (const auto& c : map) {
        if (c.q.is_zero()) throw std::invalid_argument("map denominator is identically zero");
        qprod *= c.q.lift(ctx);
    }
    ContextPtr work = ctx;
    if (saturate_graph && !qprod.is_constant())
        work = ctx->with_extra_fiber(ctx->fresh_name("t_rab"));
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < map.size(); ++i)
        gens.push_back(map[i].q.lift(work) * Polynomial::variable(work, i) -
                       map[i].p.lift(work));
    if (saturate_graph && !qprod.is_constant()) {
        Polynomial t = Polynomial::variable(work, work->num_vars() - 1);
        gens.push_back(t * qprod.lift(work) - Polynomial::one(work));
    }
    return ClosedSet(Ideal(work, std::move(gens)));
}

/// Rabinowitsch covers of a constructible domain: per member, one fresh
/// variable per subtrahend and the product of (t*q - 1) over the
/// subtrahend's generators. A closed member passes through unchanged.
/// Covers live in a context extending `ambient` by the fresh variables.
inline std::vector<ClosedSet> rabinowitsch_cover(const ContextPtr& ambient,
                                                 const std::vector<DomainMember>& domain)
{
    std::vector<ClosedSet> covers;
    for (const auto& member : domain) {
        ContextPtr work = ambient;
        std::vector<std::size_t> t_index;
        for (std::size_t k = 0; k < member.inequation_groups.size(); ++k) {
            work = work->with_extra_fiber(work->fresh_name("t_rab"));
            t_index.push_back(work->num_vars() - 1);
        }
        std::vector<Polynomial> gens;
        for (const auto& e : member.equations) gens.push_back(e.lift(work));
        for (std::size_t k = 0; k < member.inequation_groups.size(); ++k) {
            const auto& group = member.inequation_groups[k];
            if (group.empty()) continue;
            Polynomial t = Polynomial::variable(work, t_index[k]);
            Polynomial prod = Polynomial::one(work);
            for (const auto& q : group) prod *= t * q.lift(work) - Polynomial::one(work);
            gens.push_back(std::move(prod));
        }
        covers.push_back(ClosedSet(Ideal(work, std::move(gens))));
    }
    return covers;
}

/// The closed working sets whose projections union to the requested image.
inline std::vector<ClosedSet> working_sets(const ProblemSpec& spec)
{
    switch (spec.mode) {
    case Mode::Projection: {
        if (spec.domain.empty()) return {ClosedSet(Ideal(spec.ctx, spec.ideal_gens))};
        std::vector<ClosedSet> out;
        for (auto& cover : rabinowitsch_cover(spec.ctx, spec.domain)) {
            Ideal amb = lift_ideal(Ideal(spec.ctx, spec.ideal_gens), cover.context());
            out.push_back(ClosedSet(cover.ideal() + amb));
        }
        return out;
    }
    case Mode::Map: {
        ClosedSet graph = build_graph_ideal(spec.ctx, spec.map, spec.options.saturate_graph);
        if (spec.domain.empty()) return {graph};
        std::vector<ClosedSet> out;
        for (auto& cover : rabinowitsch_cover(graph.context(), spec.domain)) {
            Ideal g = lift_ideal(graph.ideal(), cover.context());
            out.push_back(ClosedSet(cover.ideal() + g));
        }
        return out;
    }
    default:
        throw std::logic_error("working_sets: orbit modes build their own graphs");
    }
}

inline OrbitProblem build_orbit_problem(const ContextPtr& ctx, const OrbitInput& in)
{
    OrbitProblem p;
    std::vector<Polynomial> gens;
    if (!in.map.empty()) {
        if (in.map.size() != ctx->num_base())
            throw std::invalid_argument("orbit map component count mismatch");
        for (std::size_t i = 0; i < in.map.size(); ++i)
            gens.push_back(in.map[i].q.lift(ctx) * Polynomial::variable(ctx, i) -
                           in.map[i].p.lift(ctx));
    }
    for (const auto& r : in.extra_relations) gens.push_back(r);
    p.graph = ClosedSet(Ideal(ctx, std::move(gens)));
    p.identity = in.identity;
    p.base_point = in.point;
    p.translations = in.translations;
    p.injective = in.injective;
    return p;
}

// ---------------------------------------------------------------------------
// problem-file parsing (line-oriented text format and JSON)
// ---------------------------------------------------------------------------

namespace problem_detail {

inline std::string strip(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!strip(cur).empty()) out.push_back(strip(cur));
    return out;
}

inline mpq_class parse_rational(const std::string& s)
{
    std::string t = strip(s);
    if (t.empty()) throw ParseError("empty rational literal");
    mpq_class q(t);
    q.canonicalize();
    return q;
}

/// Split a map component into p and q on a top-level '/' that is not part
/// of a rational literal (digit '/' digit stays a coefficient).
inline std::pair<std::string, std::string> split_component(const std::string& s)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '/' && depth == 0) {
            bool digit_left = i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]));
            std::size_t j = i + 1;
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            bool digit_right = j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]));
            if (digit_left && digit_right) continue; // rational coefficient
            return {strip(s.substr(0, i)), strip(s.substr(i + 1))};
        }
    }
    return {strip(s), ""};
}

} // namespace problem_detail

/// Parse `V(f, g) \ V(h) \ ( V(u) ∪ V(v) ) ⊎ ...` over the given context.
/// ASCII alternates: ';' for '⊎', '|' for '∪', 'Spec B' or 'V()' for the
/// whole space, '0' inside V() for the zero ideal.
inline std::vector<DomainMember> parse_constructible_expr(const std::string& src,
                                                          const ContextPtr& ctx)
{
    using problem_detail::strip;
    std::string s = src;
    // normalize unicode tokens
    auto replace_all = [&](const std::string& from, const std::string& to) {
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    };
    replace_all("⊎", ";");
    replace_all("∪", "|");
    replace_all("∅", "EMPTY");
    replace_all("Spec B", "V()");

    std::vector<DomainMember> members;
    for (const std::string& member_src : problem_detail::split(s, ';')) {
        if (strip(member_src) == "EMPTY") continue;
        DomainMember m;
        bool first = true;
        // pieces separated by top-level '\'
        std::string cur;
        int depth = 0;
        std::vector<std::string> pieces;
        for (char c : member_src) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == '\\' && depth == 0) {
                pieces.push_back(strip(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        pieces.push_back(strip(cur));
        auto parse_v = [&](const std::string& vsrc) {
            std::string t = strip(vsrc);
            if (t.size() < 3 || t.substr(0, 2) != "V(" || t.back() != ')')
                throw ParseError("expected V(...) in constructible expression: " + t);
            std::string inner = t.substr(2, t.size() - 3);
            std::vector<Polynomial> gens;
            for (const auto& g : problem_detail::split(inner, ','))
                if (!g.empty()) gens.push_back(parse_poly(g, ctx));
            return gens;
        };
        for (const auto& piece : pieces) {
            if (first) {
                m.equations = parse_v(piece);
                first = false;
                continue;
            }
            std::string t = strip(piece);
            if (!t.empty() && t.front() == '(' && t.back() == ')') {
                // ( V(...) | V(...) ): one subtrahend per V, same group? No:
                // the union of closed sets is one subtrahend group each --
                // A \ (D1 ∪ D2) = A \ D1 \ D2.
                for (const auto& vpart :
                     problem_detail::split(t.substr(1, t.size() - 2), '|'))
                    m.inequation_groups.push_back(parse_v(vpart));
            } else {
                m.inequation_groups.push_back(parse_v(t));
            }
        }
        members.push_back(std::move(m));
    }
    return members;
}

inline ProblemOptions parse_options_line(const std::string& line, ProblemOptions base)
{
    for (const auto& kv : problem_detail::split(line, ' ')) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("bad option (expected key=value): " + kv);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "strategy") {
            if (val == "infinity")
                base.strategy = Strategy::Infinity;
            else if (val == "kemper")
                base.strategy = Strategy::Kemper;
            else
                throw ParseError("unknown strategy: " + val);
        } else if (key == "iteration") {
            if (val == "linear")
                base.iteration = Iteration::Linear;
            else if (val == "graph")
                base.iteration = Iteration::Graph;
            else
                throw ParseError("unknown iteration: " + val);
        } else if (key == "seed") {
            base.seed = std::stoull(val);
        } else if (key == "hyperplane_budget") {
            base.hyperplane_budget = static_cast<unsigned>(std::stoul(val));
        } else if (key == "saturate_graph") {
            base.saturate_graph = (val == "true" || val == "1");
        } else if (key == "threads") {
            base.threads = std::stoi(val);
        } else if (key == "oracle") {
            base.oracle_primes.clear();
            for (const auto& p : problem_detail::split(val, ','))
                base.oracle_primes.push_back(std::stoul(p));
        } else {
            throw ParseError("unknown option: " + key);
        }
    }
    return base;
}

ProblemSpec parse_problem_json(const nlohmann::json& j);

/// Parse the line-oriented problem format. Sections: ring / mode / map /
/// ideal / domain / point / identity / translation <label> / injective /
/// options; '[orbit]' opens a new block in stratification mode; '#' starts
/// a comment.
inline ProblemSpec parse_problem_text(const std::string& text)
{
    using problem_detail::split;
    using problem_detail::strip;

    std::string no_comments;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            no_comments += line + "\n";
        }
    }
    {
        std::string probe = strip(no_comments);
        if (!probe.empty() && probe.front() == '{')
            return parse_problem_json(nlohmann::json::parse(probe));
    }

    ProblemSpec spec;
    std::vector<std::string> base_vars, fiber_vars;
    std::vector<std::pair<std::string, std::string>> pending; // key, value lines
    std::istringstream is(no_comments);
    std::string line;
    while (std::getline(is, line)) {
        line = strip(line);
        if (line.empty()) continue;
        if (line == "[orbit]") {
            pending.emplace_back("[orbit]", "");
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'key: value': " + line);
        pending.emplace_back(strip(line.substr(0, colon)), strip(line.substr(colon + 1)));
    }

    // first pass: ring and mode
    for (auto& [key, val] : pending) {
        if (key == "ring") {
            for (const auto& part : split(val, ';')) {
                auto sp = part.find(' ');
                std::string kind = strip(part.substr(0, sp));
                std::string names = sp == std::string::npos ? "" : part.substr(sp);
                std::vector<std::string>* dst = nullptr;
                if (kind == "base")
                    dst = &base_vars;
                else if (kind == "fiber")
                    dst = &fiber_vars;
                else
                    throw ParseError("ring section expects 'base ...' or 'fiber ...'");
                for (const auto& n : split(names, ','))
                    if (!n.empty()) dst->push_back(n);
            }
        } else if (key == "mode") {
            if (val == "projection")
                spec.mode = Mode::Projection;
            else if (val == "map")
                spec.mode = Mode::Map;
            else if (val == "orbit")
                spec.mode = Mode::Orbit;
            else if (val == "stratification")
                spec.mode = Mode::Stratification;
            else
                throw ParseError("unknown mode: " + val);
        }
    }
    if (base_vars.empty()) throw ParseError("missing ring declaration (no base variables)");
    spec.ctx = RingContext::make(base_vars, fiber_vars);
    auto source_ctx = RingContext::make({}, fiber_vars);

    bool orbit_mode = spec.mode == Mode::Orbit || spec.mode == Mode::Stratification;
    if (orbit_mode) spec.orbits.emplace_back();

    auto parse_components = [&](const std::string& val) {
        std::vector<MapComponent> comps;
        for (const auto& c : split(val, ',')) {
            auto [ps, qs] = problem_detail::split_component(c);
            MapComponent mc{parse_poly(ps, source_ctx),
                            qs.empty() ? Polynomial::one(source_ctx)
                                       : parse_poly(qs, source_ctx)};
            if (mc.q.is_zero()) throw ParseError("zero denominator in map component: " + c);
            comps.push_back(std::move(mc));
        }
        return comps;
    };
    auto parse_point = [&](const std::string& val) {
        std::vector<mpq_class> pt;
        for (const auto& c : split(val, ',')) pt.push_back(problem_detail::parse_rational(c));
        return pt;
    };

    for (auto& [key, val] : pending) {
        if (key == "ring" || key == "mode") continue;
        if (key == "[orbit]") {
            if (!orbit_mode) throw ParseError("[orbit] block outside orbit/stratification mode");
            if (!(spec.orbits.size() == 1 && spec.orbits[0].map.empty() &&
                  spec.orbits[0].extra_relations.empty() && spec.orbits[0].point.empty()))
                spec.orbits.emplace_back();
            continue;
        }
        OrbitInput* ob = orbit_mode ? &spec.orbits.back() : nullptr;
        if (key == "map") {
            auto comps = parse_components(val);
            if (orbit_mode)
                ob->map = std::move(comps);
            else
                spec.map = std::move(comps);
        } else if (key == "ideal") {
            for (const auto& g : split(val, ','))
                if (!g.empty()) {
                    Polynomial p = parse_poly(g, spec.ctx);
                    if (orbit_mode)
                        ob->extra_relations.push_back(std::move(p));
                    else
                        spec.ideal_gens.push_back(std::move(p));
                }
        } else if (key == "domain") {
            auto ctx_for_domain = spec.mode == Mode::Map ? source_ctx : spec.ctx;
            auto members = parse_constructible_expr(val, ctx_for_domain);
            for (auto& m : members) spec.domain.push_back(std::move(m));
        } else if (key == "point") {
            if (!orbit_mode) throw ParseError("'point' is only valid in orbit modes");
            ob->point = parse_point(val);
        } else if (key == "identity") {
            if (!orbit_mode) throw ParseError("'identity' is only valid in orbit modes");
            ob->identity = parse_point(val);
        } else if (key.rfind("translation", 0) == 0) {
            if (!orbit_mode) throw ParseError("'translation' is only valid in orbit modes");
            std::string label = strip(key.substr(std::string("translation").size()));
            if (label.empty()) label = "g" + std::to_string(ob->translations.size() + 1);
            Translation tr;
            tr.label = label;
            auto base_ctx = spec.ctx->base_only();
            for (const auto& c : split(val, ',')) tr.images.push_back(parse_poly(c, base_ctx));
            ob->translations.push_back(std::move(tr));
        } else if (key == "injective") {
            if (!orbit_mode) throw ParseError("'injective' is only valid in orbit modes");
            ob->injective = (val == "true" || val == "1");
        } else if (key == "options") {
            spec.options = parse_options_line(val, spec.options);
        } else {
            throw ParseError("unknown section: " + key);
        }
    }

    if (spec.mode == Mode::Map && spec.map.empty())
        throw ParseError("map mode requires a 'map:' line");
    if (orbit_mode)
        for (const auto& ob2 : spec.orbits)
            if (ob2.point.size() != spec.ctx->num_base() ||
                ob2.identity.size() != spec.ctx->num_fiber())
                throw ParseError("orbit blocks need 'point' (base arity) and 'identity' (fiber arity)");
    return spec;
}

inline ProblemSpec parse_problem_json(const nlohmann::json& j)
{
    ProblemSpec spec;
    std::vector<std::string> base = j.at("ring").at("base");
    std::vector<std::string> fiber;
    if (j.at("ring").contains("fiber"))
        fiber = j.at("ring").at("fiber").get<std::vector<std::string>>();
    spec.ctx = RingContext::make(base, fiber);
    auto source_ctx = RingContext::make({}, fiber);

    std::string mode = j.value("mode", "projection");
    if (mode == "projection")
        spec.mode = Mode::Projection;
    else if (mode == "map")
        spec.mode = Mode::Map;
    else if (mode == "orbit")
        spec.mode = Mode::Orbit;
    else if (mode == "stratification")
        spec.mode = Mode::Stratification;
    else
        throw ParseError("unknown mode: " + mode);

    auto comps_from = [&](const nlohmann::json& arr) {
        std::vector<MapComponent> comps;
        for (const auto& c : arr) {
            if (c.is_array())
                comps.push_back({parse_poly(c.at(0), source_ctx), parse_poly(c.at(1), source_ctx)});
            else {
                auto [ps, qs] = problem_detail::split_component(c.get<std::string>());
                comps.push_back({parse_poly(ps, source_ctx),
                                 qs.empty() ? Polynomial::one(source_ctx)
                                            : parse_poly(qs, source_ctx)});
            }
        }
        return comps;
    };
    auto orbit_from = [&](const nlohmann::json& jo) {
        OrbitInput ob;
        if (jo.contains("map")) ob.map = comps_from(jo.at("map"));
        if (jo.contains("ideal"))
            for (const auto& g : jo.at("ideal"))
                ob.extra_relations.push_back(parse_poly(g, spec.ctx));
        for (const auto& c : jo.at("point"))
            ob.point.push_back(problem_detail::parse_rational(
                c.is_string() ? c.get<std::string>() : nlohmann::to_string(c)));
        for (const auto& c : jo.at("identity"))
            ob.identity.push_back(problem_detail::parse_rational(
                c.is_string() ? c.get<std::string>() : nlohmann::to_string(c)));
        if (jo.contains("translations"))
            for (const auto& t : jo.at("translations")) {
                Translation tr;
                tr.label = t.value("label", "g");
                auto base_ctx = spec.ctx->base_only();
                for (const auto& img : t.at("images"))
                    tr.images.push_back(parse_poly(img, base_ctx));
                ob.translations.push_back(std::move(tr));
            }
        ob.injective = jo.value("injective", false);
        return ob;
    };

    if (j.contains("map")) spec.map = comps_from(j.at("map"));
    if (j.contains("ideal"))
        for (const auto& g : j.at("ideal")) spec.ideal_gens.push_back(parse_poly(g, spec.ctx));
    if (j.contains("domain")) {
        auto ctx_for_domain = spec.mode == Mode::Map ? source_ctx : spec.ctx;
        spec.domain = parse_constructible_expr(j.at("domain"), ctx_for_domain);
    }
    if (spec.mode == Mode::Orbit) spec.orbits.push_back(orbit_from(j.at("orbit")));
    if (spec.mode == Mode::Stratification)
        for (const auto& jo : j.at("orbits")) spec.orbits.push_back(orbit_from(jo));
    if (j.contains("options")) {
        const auto& jo = j.at("options");
        std::string line;
        for (auto it = jo.begin(); it != jo.end(); ++it) {
            std::string v = it.value().is_string() ? it.value().get<std::string>()
                                                   : nlohmann::to_string(it.value());
            line += it.key() + "=" + v + " ";
        }
        spec.options = parse_options_line(line, spec.options);
    }
    return spec;
}

/// Canonical text form; parse(print(spec)) reproduces the spec.
inline std::string print_problem(const ProblemSpec& spec)
{
    std::ostringstream os;
    os << "ring: base ";
    for (std::size_t i = 0; i < spec.ctx->num_base(); ++i)
        os << (i ? ", " : "") << spec.ctx->base_vars()[i];
    if (spec.ctx->num_fiber()) {
        os << " ; fiber ";
        for (std::size_t i = 0; i < spec.ctx->num_fiber(); ++i)
            os << (i ? ", " : "") << spec.ctx->fiber_vars()[i];
    }
    os << "\nmode: " << mode_name(spec.mode) << "\n";

    auto print_components = [&](const std::vector<MapComponent>& comps) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (i) os << ", ";
            bool rational = !(comps[i].q == Polynomial::one(comps[i].q.context()));
            os << comps[i].p.to_string();
            if (rational) os << " / (" << comps[i].q.to_string() << ")";
        }
    };
    auto print_point = [&](const std::vector<mpq_class>& pt) {
        for (std::size_t i = 0; i < pt.size(); ++i) {
            if (i) os << ", ";
            os << pt[i];
        }
    };
    auto print_orbit = [&](const OrbitInput& ob) {
        if (!ob.map.empty()) {
            os << "map: ";
            print_components(ob.map);
            os << "\n";
        }
        if (!ob.extra_relations.empty()) {
            os << "ideal: ";
            for (std::size_t i = 0; i < ob.extra_relations.size(); ++i)
                os << (i ? ", " : "") << ob.extra_relations[i].to_string();
            os << "\n";
        }
        os << "point: ";
        print_point(ob.point);
        os << "\nidentity: ";
        print_point(ob.identity);
        os << "\n";
        for (const auto& tr : ob.translations) {
            os << "translation " << tr.label << ": ";
            for (std::size_t i = 0; i < tr.images.size(); ++i)
                os << (i ? ", " : "") << tr.images[i].to_string();
            os << "\n";
        }
        if (ob.injective) os << "injective: true\n";
    };

    if (spec.mode == Mode::Map) {
        os << "map: ";
        print_components(spec.map);
        os << "\n";
    }
    if (!spec.ideal_gens.empty() &&
        (spec.mode == Mode::Projection || spec.mode == Mode::Map)) {
        os << "ideal: ";
        for (std::size_t i = 0; i < spec.ideal_gens.size(); ++i)
            os << (i ? ", " : "") << spec.ideal_gens[i].to_string();
        os << "\n";
    }
    if (!spec.domain.empty()) {
        os << "domain: ";
        for (std::size_t k = 0; k < spec.domain.size(); ++k) {
            if (k) os << " ⊎ ";
            const auto& m = spec.domain[k];
            os << "V(";
            for (std::size_t i = 0; i < m.equations.size(); ++i)
                os << (i ? ", " : "") << m.equations[i].to_string();
            os << ")";
            for (const auto& group : m.inequation_groups) {
                os << " \\ V(";
                for (std::size_t i = 0; i < group.size(); ++i)
                    os << (i ? ", " : "") << group[i].to_string();
                os << ")";
            }
        }
        os << "\n";
    }
    if (spec.mode == Mode::Orbit) print_orbit(spec.orbits.at(0));
    if (spec.mode == Mode::Stratification)
        for (const auto& ob : spec.orbits) {
            os << "[orbit]\n";
            print_orbit(ob);
        }

    os << "options: strategy=" << (spec.options.strategy == Strategy::Kemper ? "kemper" : "infinity")
       << " iteration=" << (spec.options.iteration == Iteration::Linear ? "linear" : "graph")
       << " seed=" << spec.options.seed
       << " hyperplane_budget=" << spec.options.hyperplane_budget;
    if (spec.options.saturate_graph) os << " saturate_graph=true";
    if (spec.options.threads != 1) os << " threads=" << spec.options.threads;
    if (!spec.options.oracle_primes.empty()) {
        os << " oracle=";
        for (std::size_t i = 0; i < spec.options.oracle_primes.size(); ++i)
            os << (i ? "," : "") << spec.options.oracle_primes[i];
    }
    os << "\n";
    return os.str();
}

} // namespace chv
