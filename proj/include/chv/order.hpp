#pragma once

#include <string>
#include <vector>

#include "chv/monomial.hpp"

namespace chv {

enum class OrderKind { Lex, DegRevLex, Block };

/// Total, multiplicative, global monomial order. Block orders compare an
/// eliminated group of variables first (by degrevlex), breaking ties by
/// degrevlex on the remaining group; this realizes x_i >> B as well as the
/// auxiliary-variable elimination used by saturation and radical membership.
class MonomialOrder {
public:
    static MonomialOrder lex(std::size_t nvars)
    {
        MonomialOrder o;
        o.kind_ = OrderKind::Lex;
        o.nvars_ = nvars;
        return o;
    }

    static MonomialOrder degrevlex(std::size_t nvars)
    {
        MonomialOrder o;
        o.kind_ = OrderKind::DegRevLex;
        o.nvars_ = nvars;
        return o;
    }

    /// Fiber variables >> base variables.
    static MonomialOrder block_fiber(const RingContext& ctx)
    {
        MonomialOrder o;
        o.kind_ = OrderKind::Block;
        o.nvars_ = ctx.num_vars();
        o.elim_.assign(ctx.num_vars(), 0);
        for (std::size_t i = 0; i < ctx.num_vars(); ++i)
            if (ctx.is_fiber(i)) o.elim_[i] = 1;
        o.rebuild_groups();
        return o;
    }

    /// The given variables >> all others.
    static MonomialOrder block(const RingContext& ctx, const std::vector<int>& elim_vars)
    {
        MonomialOrder o;
        o.kind_ = OrderKind::Block;
        o.nvars_ = ctx.num_vars();
        o.elim_.assign(ctx.num_vars(), 0);
        for (int v : elim_vars) o.elim_.at(v) = 1;
        o.rebuild_groups();
        return o;
    }

    OrderKind kind() const { return kind_; }
    const std::vector<char>& elim_mask() const { return elim_; }

    /// < 0 if a < b, 0 if equal, > 0 if a > b.
    int compare(const Monomial& a, const Monomial& b) const
    {
        switch (kind_) {
        case OrderKind::Lex:
            return cmp_lex(a, b);
        case OrderKind::DegRevLex:
            return cmp_drl_full(a, b);
        case OrderKind::Block: {
            int c = cmp_drl_group(a, b, elim_idx_);
            if (c != 0) return c;
            return cmp_drl_group(a, b, rest_idx_);
        }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    /// Stable key for per-order caches.
    std::string cache_key() const
    {
        std::string k;
        switch (kind_) {
        case OrderKind::Lex: k = "lex"; break;
        case OrderKind::DegRevLex: k = "drl"; break;
        case OrderKind::Block:
            k = "blk:";
            for (char c : elim_) k += (c ? '1' : '0');
            break;
        }
        return k;
    }

    bool operator==(const MonomialOrder& o) const
    {
        return kind_ == o.kind_ && elim_ == o.elim_;
    }

private:
    static int cmp_lex(const Monomial& a, const Monomial& b)
    {
        for (std::size_t i = 0; i < a.nvars(); ++i)
            if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? -1 : 1;
        return 0;
    }

    static int cmp_drl_full(const Monomial& a, const Monomial& b)
    {
        if (a.total_degree() != b.total_degree())
            return a.total_degree() < b.total_degree() ? -1 : 1;
        // revlex tiebreak: last differing exponent, smaller exponent wins
        for (std::size_t i = a.nvars(); i-- > 0;)
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
        return 0;
    }

    static int cmp_drl_group(const Monomial& a, const Monomial& b, const std::vector<int>& idx)
    {
        long da = 0, db = 0;
        for (int i : idx) {
            da += a.exp(i);
            db += b.exp(i);
        }
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t k = idx.size(); k-- > 0;) {
            int i = idx[k];
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
        }
        return 0;
    }

    void rebuild_groups()
    {
        elim_idx_.clear();
        rest_idx_.clear();
        for (std::size_t i = 0; i < elim_.size(); ++i)
            (elim_[i] ? elim_idx_ : rest_idx_).push_back(static_cast<int>(i));
    }

    OrderKind kind_ = OrderKind::DegRevLex;
    std::size_t nvars_ = 0;
    std::vector<char> elim_;
    std::vector<int> elim_idx_, rest_idx_;
};

} // namespace chv
