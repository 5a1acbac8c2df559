#pragma once

#include <cstdint>
#include <optional>

#include "chv/polynomial.hpp"

namespace chv {

/// Source of affine hyperplanes (as linear polynomials in the fiber
/// variables, constant over the base) consumed by the fiber reduction.
class HyperplaneSource {
public:
    virtual ~HyperplaneSource() = default;
    virtual std::optional<Polynomial> next() = 0;
};

/// The escalating Las-Vegas family: first {x_i = 0} for every fiber
/// variable, then {x_i = a} for small integers a = 1, -1, 2, -2, ..., then
/// {x_i - a_1 x_j - a_0} with small seeded coefficients. Deterministic for a
/// fixed seed; stages 0 and 1 do not depend on the seed at all.
class HyperplaneIterator : public HyperplaneSource {
public:
    HyperplaneIterator(ContextPtr ctx, std::uint64_t seed, unsigned stage_budget_factor = 8)
        : ctx_(std::move(ctx)), state_(seed ^ 0x9e3779b97f4a7c15ull),
          budget_(stage_budget_factor * std::max<std::size_t>(1, ctx_->num_fiber()))
    {
    }

    std::optional<Polynomial> next() override
    {
        const std::size_t n = ctx_->num_fiber();
        if (n == 0) return std::nullopt;
        const std::size_t nb = ctx_->num_base();
        switch (stage_) {
        case 0: {
            if (idx_ < n) {
                std::size_t i = nb + idx_++;
                return Polynomial::variable(ctx_, i);
            }
            stage_ = 1;
            idx_ = 0;
            [[fallthrough]];
        }
        case 1: {
            if (idx_ < budget_) {
                std::size_t k = idx_++;
                std::size_t i = nb + (k % n);
                long a_idx = static_cast<long>(k / n);
                long a = (a_idx / 2 + 1) * (a_idx % 2 == 0 ? 1 : -1);
                return Polynomial::variable(ctx_, i) -
                       Polynomial::constant(ctx_, mpq_class(a));
            }
            stage_ = 2;
            idx_ = 0;
            [[fallthrough]];
        }
        case 2: {
            if (n < 2) return std::nullopt; // no two-variable planes available
            if (idx_ < budget_) {
                ++idx_;
                std::size_t i = nb + rnd() % n;
                std::size_t j = nb + rnd() % n;
                while (j == i) j = nb + rnd() % n;
                long a1 = static_cast<long>(rnd() % 5) - 2;
                if (a1 == 0) a1 = 1;
                long a0 = static_cast<long>(rnd() % 5) - 2;
                return Polynomial::variable(ctx_, i) -
                       Polynomial::constant(ctx_, mpq_class(a1)) * Polynomial::variable(ctx_, j) -
                       Polynomial::constant(ctx_, mpq_class(a0));
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
        }
    }

    unsigned stage() const { return stage_; }

private:
    std::uint64_t rnd()
    {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    ContextPtr ctx_;
    std::uint64_t state_;
    std::size_t budget_;
    unsigned stage_ = 0;
    std::size_t idx_ = 0;
};

/// Fixed list source for tests that need to force a particular hyperplane.
class FixedHyperplanes : public HyperplaneSource {
public:
    explicit FixedHyperplanes(std::vector<Polynomial> planes) : planes_(std::move(planes)) {}

    std::optional<Polynomial> next() override
    {
        if (pos_ >= planes_.size()) return std::nullopt;
        return planes_[pos_++];
    }

private:
    std::vector<Polynomial> planes_;
    std::size_t pos_ = 0;
};

} // namespace chv
