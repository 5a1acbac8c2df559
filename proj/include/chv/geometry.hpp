#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chv/idealops.hpp"

namespace chv {

/// A closed subset of Spec B (or of the total space) regarded up to radical:
/// generators are stored as given, never radicalized, and every predicate
/// goes through radical membership.
class ClosedSet {
public:
    ClosedSet() = default;

    explicit ClosedSet(Ideal ideal) : ideal_(std::move(ideal)) {}

    ClosedSet(ContextPtr ctx, std::vector<Polynomial> gens)
        : ideal_(std::move(ctx), std::move(gens))
    {
    }

    static ClosedSet whole_space(ContextPtr ctx) { return ClosedSet(Ideal::zero(std::move(ctx))); }
    static ClosedSet empty_set(ContextPtr ctx) { return ClosedSet(Ideal::unit(std::move(ctx))); }

    const Ideal& ideal() const { return ideal_; }
    const ContextPtr& context() const { return ideal_.context(); }

    bool is_empty() const { return ideal_.is_unit(); }
    bool is_whole_space() const { return ideal_.trivially_zero(); }

    /// Set containment: does this set contain `other`? Decided by checking
    /// that every generator of this ideal lies in the radical of the other.
    bool contains_set(const ClosedSet& other) const
    {
        if (!same_context(context(), other.context()))
            throw std::invalid_argument("closed-set context mismatch");
        for (const auto& g : ideal_.generators())
            if (!radical_member(g, other.ideal_)) return false;
        return true;
    }

    bool set_equal(const ClosedSet& other) const
    {
        return contains_set(other) && other.contains_set(*this);
    }

    bool contains_point(const std::vector<mpq_class>& p) const
    {
        for (const auto& g : ideal_.generators())
            if (g.evaluate(p) != 0) return false;
        return true;
    }

    std::string to_string() const
    {
        if (is_whole_space()) return "Spec B";
        std::ostringstream os;
        os << "V(";
        bool first = true;
        for (const auto& g : ideal_.generators()) {
            if (g.is_zero()) continue;
            if (!first) os << ", ";
            os << g.to_string();
            first = false;
        }
        os << ")";
        return os.str();
    }

    nlohmann::json to_json() const
    {
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& g : ideal_.generators())
            if (!g.is_zero()) gens.push_back(g.to_string());
        return gens;
    }

private:
    Ideal ideal_;
};

/// Γ ∩ π^{-1}(D): lift the base equations into the full ring and add them.
inline ClosedSet preimage_intersect(const ClosedSet& gamma, const ClosedSet& d_base)
{
    const auto& full = gamma.context();
    Ideal lifted = lift_ideal(d_base.ideal(), full);
    return ClosedSet(gamma.ideal() + lifted);
}

/// A closed set containing the closure of P \ Q: V(ideal(P) : ideal(Q)^∞).
/// Equality holds when ideal(P) is radical; a possible overshoot only makes
/// the split tests more conservative (the cover property
/// V(I) ⊆ V(I'') ∪ V(I : I''^∞) always holds).
inline ClosedSet difference_closure(const ClosedSet& p, const ClosedSet& q)
{
    if (!same_context(p.context(), q.context()))
        throw std::invalid_argument("difference_closure: context mismatch");
    if (q.is_whole_space()) return ClosedSet::empty_set(p.context());
    return ClosedSet(saturate(p.ideal(), q.ideal()));
}

/// A \ (D_1 ∪ ... ∪ D_a) with every stored subtrahend proper and maximal.
struct MultipleDifference {
    ClosedSet positive;
    std::vector<ClosedSet> subtrahends;

    bool contains_point(const std::vector<mpq_class>& p) const
    {
        if (!positive.contains_point(p)) return false;
        for (const auto& d : subtrahends)
            if (d.contains_point(p)) return false;
        return true;
    }

    std::string to_string() const
    {
        std::string s = positive.to_string();
        if (subtrahends.empty()) return s;
        if (subtrahends.size() == 1) return s + " \\ " + subtrahends[0].to_string();
        s += " \\ ( ";
        for (std::size_t i = 0; i < subtrahends.size(); ++i) {
            if (i) s += " ∪ ";
            s += subtrahends[i].to_string();
        }
        s += " )";
        return s;
    }
};

/// Normalize a difference: drop empty subtrahends and subtrahends contained
/// in another one; return nothing when the difference denotes ∅ (positive
/// part empty or swallowed by a subtrahend).
inline std::optional<MultipleDifference> make_difference(ClosedSet positive,
                                                         std::vector<ClosedSet> subtrahends)
{
    if (positive.is_empty()) return std::nullopt;
    std::vector<ClosedSet> kept;
    for (auto& d : subtrahends) {
        if (d.is_empty()) continue;
        if (d.contains_set(positive)) return std::nullopt; // difference collapsed to ∅
        kept.push_back(std::move(d));
    }
    // keep only maximal subtrahends
    std::vector<char> dominated(kept.size(), 0);
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (i == j || dominated[i] || dominated[j]) continue;
            if (kept[j].contains_set(kept[i])) {
                if (kept[i].contains_set(kept[j]) && i < j)
                    dominated[j] = 1; // set-equal: keep the first
                else
                    dominated[i] = 1;
            }
        }
    MultipleDifference md;
    md.positive = std::move(positive);
    for (std::size_t i = 0; i < kept.size(); ++i)
        if (!dominated[i]) md.subtrahends.push_back(std::move(kept[i]));
    return md;
}

/// Finite union of multiple differences.
class ConstructibleSet {
public:
    ConstructibleSet() = default;
    explicit ConstructibleSet(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    const ContextPtr& context() const { return ctx_; }
    const std::vector<MultipleDifference>& components() const { return comps_; }
    bool is_empty_presentation() const { return comps_.empty(); }

    void add(MultipleDifference md)
    {
        if (!ctx_) ctx_ = md.positive.context();
        comps_.push_back(std::move(md));
    }

    void add_normalized(ClosedSet positive, std::vector<ClosedSet> subtrahends)
    {
        auto md = make_difference(std::move(positive), std::move(subtrahends));
        if (md) add(std::move(*md));
    }

    bool contains_point(const std::vector<mpq_class>& p) const
    {
        if (ctx_ && p.size() != ctx_->num_vars())
            throw std::invalid_argument("membership: point dimension mismatch");
        for (const auto& c : comps_)
            if (c.contains_point(p)) return true;
        return false;
    }

    std::string to_string() const
    {
        if (comps_.empty()) return "∅";
        std::string s;
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (i) s += " ⊎ ";
            s += comps_[i].to_string();
        }
        return s;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& c : comps_) {
            nlohmann::json sub = nlohmann::json::array();
            for (const auto& d : c.subtrahends) sub.push_back(d.to_json());
            comps.push_back({{"positive", c.positive.to_json()}, {"subtrahends", sub}});
        }
        nlohmann::json j;
        j["components"] = comps;
        if (ctx_) j["vars"] = ctx_->all_vars();
        return j;
    }

private:
    ContextPtr ctx_;
    std::vector<MultipleDifference> comps_;
};

/// Presentation-level equality up to radical: components match one-to-one
/// (in any order) with set-equal positives and set-equal subtrahend lists.
inline bool differences_match(const MultipleDifference& a, const MultipleDifference& b)
{
    if (!a.positive.set_equal(b.positive)) return false;
    if (a.subtrahends.size() != b.subtrahends.size()) return false;
    std::vector<char> used(b.subtrahends.size(), 0);
    for (const auto& d : a.subtrahends) {
        bool found = false;
        for (std::size_t j = 0; j < b.subtrahends.size(); ++j) {
            if (used[j]) continue;
            if (d.set_equal(b.subtrahends[j])) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline bool presentations_match(const ConstructibleSet& A, const ConstructibleSet& B)
{
    if (A.components().size() != B.components().size()) return false;
    std::vector<char> used(B.components().size(), 0);
    for (const auto& c : A.components()) {
        bool found = false;
        for (std::size_t j = 0; j < B.components().size(); ++j) {
            if (used[j]) continue;
            if (differences_match(c, B.components()[j])) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace chv
