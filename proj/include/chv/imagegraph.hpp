#pragma once

#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "chv/geometry.hpp"

namespace chv {

/// Work item of the graph iteration: a negative node to recurse below, the
/// level at which it was scheduled, and the total-space set to restrict.
struct PreNode {
    int neg_id;
    int level;
    ClosedSet gamma;
};

/// The bipartite bookkeeping graph: positive nodes carry projection
/// closures, negative nodes carry boundary hulls, and a FIFO of pre-nodes
/// drives the outer iteration. Node identity is radical-blind set equality;
/// removed nodes become tombstones so queued pre-nodes stay valid.
class ImageGraph {
public:
    explicit ImageGraph(ContextPtr base_ctx) : base_ctx_(std::move(base_ctx)) {}

    const ContextPtr& base_context() const { return base_ctx_; }

    /// Creates the root negative node (the whole base space).
    int add_root()
    {
        neg_.push_back({ClosedSet::whole_space(base_ctx_), {}, {}, true});
        return static_cast<int>(neg_.size()) - 1;
    }

    bool is_done() const { return fifo_.empty(); }

    PreNode pop()
    {
        if (fifo_.empty()) throw std::logic_error("pop on empty pre-node FIFO");
        PreNode p = std::move(fifo_.front());
        fifo_.pop_front();
        return p;
    }

    int minimal_level() const
    {
        if (fifo_.empty()) throw std::logic_error("minimal_level on empty pre-node FIFO");
        int m = fifo_.front().level;
        for (const auto& p : fifo_) m = std::min(m, p.level);
        return m;
    }

    int minimal_level_or(int fallback) const { return fifo_.empty() ? fallback : minimal_level(); }

    void push_front(PreNode p) { fifo_.push_front(std::move(p)); }
    void push_back(PreNode p) { fifo_.push_back(std::move(p)); }
    std::size_t pending() const { return fifo_.size(); }

    const ClosedSet& negative_set(int id) const { return neg_.at(id).set; }

    std::size_t num_positive_alive() const { return count_alive(pos_); }
    std::size_t num_negative_alive() const { return count_alive(neg_); }
    std::uint64_t squash_removals() const { return squash_removals_; }

    /// Attach the result of one locally closed approximation below the
    /// negative node `d`: dedup the positive node, link it, then dedup and
    /// link every hull, scheduling a pre-node at level+1 for each of them.
    void attach(int d, int level, const ClosedSet& a_set, const std::vector<ClosedSet>& hulls,
                const ClosedSet& gamma)
    {
        if (d < 0 || d >= static_cast<int>(neg_.size()))
            throw std::invalid_argument("attach: no such negative node");
        int a = find_alive(pos_, a_set);
        if (a < 0) {
            pos_.push_back({a_set, {}, {}, true});
            a = static_cast<int>(pos_.size()) - 1;
        }
        link_parent_neg(a, d);
        for (const auto& h : hulls) {
            int di = find_alive(neg_, h);
            if (di < 0) {
                neg_.push_back({h, {}, {}, true});
                di = static_cast<int>(neg_.size()) - 1;
            }
            fifo_.push_back({di, level + 1, gamma});
            link_child_neg(a, di);
        }
    }

    /// First loop: collapse pairs (D, A) where D is the sole parent of A, A
    /// the sole child of D and both carry the same set, re-linking
    /// grandparents to grandchildren. The root (a negative node without
    /// parents) is never collapsed: it has no grandparents to inherit.
    /// Second loop: drop children dominated by a sibling, deleting orphaned
    /// negative nodes.
    void squash()
    {
        for (int a = 0; a < static_cast<int>(pos_.size()); ++a) {
            if (!pos_[a].alive || pos_[a].parents.size() != 1) continue;
            int d = *pos_[a].parents.begin();
            if (!neg_[d].alive || neg_[d].children.size() != 1 || neg_[d].parents.empty())
                continue;
            if (!pos_[a].set.set_equal(neg_[d].set)) continue;
            for (int ap : neg_[d].parents)
                for (int dc : pos_[a].children) link_child_neg(ap, dc);
            remove_pos(a);
            remove_neg(d);
            squash_removals_ += 2;
        }
        for (int a = 0; a < static_cast<int>(pos_.size()); ++a) {
            if (!pos_[a].alive) continue;
            std::vector<int> children(pos_[a].children.begin(), pos_[a].children.end());
            for (int d : children) {
                if (!pos_[a].children.count(d)) continue;
                bool dominated = false;
                for (int d2 : pos_[a].children) {
                    if (d2 == d) continue;
                    if (neg_[d2].set.contains_set(neg_[d].set)) {
                        dominated = true;
                        break;
                    }
                }
                if (!dominated) continue;
                pos_[a].children.erase(d);
                neg_[d].parents.erase(a);
                if (neg_[d].parents.empty()) {
                    remove_neg(d);
                    squash_removals_ += 1;
                }
            }
        }
    }

    ConstructibleSet as_union_of_multiple_differences() const
    {
        if (!fifo_.empty())
            throw std::logic_error("pre-nodes still pending; the iteration is not finished");
        ConstructibleSet out(base_ctx_);
        for (const auto& node : pos_) {
            if (!node.alive) continue;
            std::vector<ClosedSet> subs;
            for (int d : node.children) subs.push_back(neg_[d].set);
            out.add_normalized(node.set, std::move(subs));
        }
        return out;
    }

    /// Structural invariants (for tests): mutual parent/child consistency
    /// and the containment constraints along edges.
    void validate(bool check_order = false) const
    {
        for (int a = 0; a < static_cast<int>(pos_.size()); ++a) {
            if (!pos_[a].alive) continue;
            for (int d : pos_[a].parents)
                if (!neg_.at(d).children.count(a))
                    throw std::logic_error("graph link inconsistency (pos parent)");
            for (int d : pos_[a].children)
                if (!neg_.at(d).parents.count(a))
                    throw std::logic_error("graph link inconsistency (pos child)");
        }
        for (int d = 0; d < static_cast<int>(neg_.size()); ++d) {
            if (!neg_[d].alive) continue;
            for (int a : neg_[d].children)
                if (!pos_.at(a).parents.count(d))
                    throw std::logic_error("graph link inconsistency (neg child)");
            for (int a : neg_[d].parents)
                if (!pos_.at(a).children.count(d))
                    throw std::logic_error("graph link inconsistency (neg parent)");
        }
        if (check_order) {
            for (int a = 0; a < static_cast<int>(pos_.size()); ++a) {
                if (!pos_[a].alive) continue;
                for (int d : pos_[a].children)
                    if (!pos_[a].set.contains_set(neg_[d].set))
                        throw std::logic_error("child hull not contained in positive node");
                for (int d : pos_[a].parents)
                    if (neg_[d].alive && !neg_[d].set.contains_set(pos_[a].set))
                        throw std::logic_error("positive node not contained in parent hull");
            }
        }
    }

private:
    struct Node {
        ClosedSet set;
        std::set<int> parents, children;
        bool alive;
    };

    static std::size_t count_alive(const std::vector<Node>& v)
    {
        std::size_t k = 0;
        for (const auto& n : v)
            if (n.alive) ++k;
        return k;
    }

    int find_alive(const std::vector<Node>& v, const ClosedSet& s) const
    {
        for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[i].alive && v[i].set.set_equal(s)) return i;
        return -1;
    }

    // d becomes a parent of a
    void link_parent_neg(int a, int d)
    {
        pos_[a].parents.insert(d);
        neg_[d].children.insert(a);
    }

    // d becomes a child of a
    void link_child_neg(int a, int d)
    {
        pos_[a].children.insert(d);
        neg_[d].parents.insert(a);
    }

    void remove_pos(int a)
    {
        pos_[a].alive = false;
        for (int d : pos_[a].parents) neg_[d].children.erase(a);
        for (int d : pos_[a].children) neg_[d].parents.erase(a);
        pos_[a].parents.clear();
        pos_[a].children.clear();
    }

    void remove_neg(int d)
    {
        neg_[d].alive = false;
        for (int a : neg_[d].parents) pos_[a].children.erase(d);
        for (int a : neg_[d].children) pos_[a].parents.erase(d);
        neg_[d].parents.clear();
        neg_[d].children.clear();
    }

    ContextPtr base_ctx_;
    std::vector<Node> pos_, neg_;
    std::deque<PreNode> fifo_;
    std::uint64_t squash_removals_ = 0;
};

} // namespace chv
