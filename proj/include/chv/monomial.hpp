#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "chv/context.hpp"

namespace chv {

/// Exponent vector, dense over the context's variables, with cached total
/// and fiber degrees. The fiber degree is the |i| of the grading used by
/// the top-fiber-degree part and the block elimination orders.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}

    Monomial(std::vector<std::uint16_t> exps, std::size_t nbase)
        : exps_(std::move(exps))
    {
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            deg_total_ += exps_[i];
            if (i >= nbase) deg_fiber_ += exps_[i];
        }
    }

    static Monomial one(const RingContext& ctx) { return Monomial(ctx.num_vars()); }

    static Monomial var(const RingContext& ctx, std::size_t idx, std::uint16_t e = 1)
    {
        Monomial m(ctx.num_vars());
        m.exps_[idx] = e;
        m.deg_total_ = e;
        if (ctx.is_fiber(idx)) m.deg_fiber_ = e;
        return m;
    }

    const std::vector<std::uint16_t>& exps() const { return exps_; }
    std::uint16_t exp(std::size_t i) const { return exps_[i]; }
    std::size_t nvars() const { return exps_.size(); }

    std::uint32_t total_degree() const { return deg_total_; }
    std::uint32_t fiber_degree() const { return deg_fiber_; }
    std::uint32_t base_degree() const { return deg_total_ - deg_fiber_; }

    bool is_one() const { return deg_total_ == 0; }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        r.exps_.resize(a.exps_.size());
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            r.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] + b.exps_[i]);
        r.deg_total_ = a.deg_total_ + b.deg_total_;
        r.deg_fiber_ = a.deg_fiber_ + b.deg_fiber_;
        return r;
    }

    friend bool divides(const Monomial& a, const Monomial& b)
    {
        if (a.deg_total_ > b.deg_total_) return false;
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            if (a.exps_[i] > b.exps_[i]) return false;
        return true;
    }

    /// b / a, assuming divides(a, b).
    friend Monomial quotient(const Monomial& b, const Monomial& a)
    {
        Monomial r;
        r.exps_.resize(a.exps_.size());
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            r.exps_[i] = static_cast<std::uint16_t>(b.exps_[i] - a.exps_[i]);
        r.deg_total_ = b.deg_total_ - a.deg_total_;
        r.deg_fiber_ = b.deg_fiber_ - a.deg_fiber_;
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b, std::size_t nbase)
    {
        std::vector<std::uint16_t> e(a.exps_.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.exps_[i], b.exps_[i]);
        return Monomial(std::move(e), nbase);
    }

    friend bool coprime(const Monomial& a, const Monomial& b)
    {
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            if (a.exps_[i] && b.exps_[i]) return false;
        return true;
    }

    /// True if only variables with index < nbase occur.
    bool base_only() const { return deg_fiber_ == 0; }

    std::size_t hash() const
    {
        std::size_t h = 1469598103934665603ull;
        for (auto e : exps_) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    std::vector<std::uint16_t> exps_;
    std::uint32_t deg_total_ = 0;
    std::uint32_t deg_fiber_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

} // namespace chv
