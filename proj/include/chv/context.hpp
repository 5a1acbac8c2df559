#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace chv {

class RingContext;
using ContextPtr = std::shared_ptr<const RingContext>;

/// A polynomial ring QQ[b_1,...,b_m][x_1,...,x_n] with named base and fiber
/// variables. Variables are indexed base-first, fiber-last. Contexts are
/// immutable and shared; polynomials from different contexts never mix.
class RingContext {
public:
    static ContextPtr make(std::vector<std::string> base_vars,
                           std::vector<std::string> fiber_vars)
    {
        auto ctx = std::make_shared<RingContext>();
        ctx->base_ = std::move(base_vars);
        ctx->fiber_ = std::move(fiber_vars);
        ctx->names_.reserve(ctx->base_.size() + ctx->fiber_.size());
        for (const auto& v : ctx->base_) ctx->names_.push_back(v);
        for (const auto& v : ctx->fiber_) ctx->names_.push_back(v);
        for (std::size_t i = 0; i < ctx->names_.size(); ++i)
            for (std::size_t j = i + 1; j < ctx->names_.size(); ++j)
                if (ctx->names_[i] == ctx->names_[j])
                    throw std::invalid_argument("duplicate variable name: " + ctx->names_[i]);
        return ctx;
    }

    std::size_t num_vars() const { return names_.size(); }
    std::size_t num_base() const { return base_.size(); }
    std::size_t num_fiber() const { return fiber_.size(); }

    bool is_base(std::size_t idx) const { return idx < base_.size(); }
    bool is_fiber(std::size_t idx) const { return idx >= base_.size(); }

    const std::string& name(std::size_t idx) const { return names_.at(idx); }
    const std::vector<std::string>& base_vars() const { return base_; }
    const std::vector<std::string>& fiber_vars() const { return fiber_; }
    const std::vector<std::string>& all_vars() const { return names_; }

    /// Index of a variable by name, -1 if absent.
    int find(const std::string& name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    int index_of(const std::string& name) const
    {
        int i = find(name);
        if (i < 0) throw std::invalid_argument("unknown variable: " + name);
        return i;
    }

    /// The base ring QQ[b_1,...,b_m] as its own context.
    ContextPtr base_only() const { return make(base_, {}); }

    /// Same base, fiber extended by one fresh variable (used for the
    /// Rabinowitsch trick and saturation).
    ContextPtr with_extra_fiber(const std::string& name) const
    {
        auto fiber = fiber_;
        fiber.push_back(name);
        return make(base_, std::move(fiber));
    }

    /// A name of the form `hint`, `hint_1`, ... not present in this context.
    std::string fresh_name(const std::string& hint) const
    {
        if (find(hint) < 0) return hint;
        for (int i = 1;; ++i) {
            std::string cand = hint + "_" + std::to_string(i);
            if (find(cand) < 0) return cand;
        }
    }

    friend bool same_context(const RingContext& a, const RingContext& b)
    {
        return &a == &b || (a.base_ == b.base_ && a.fiber_ == b.fiber_);
    }

private:
    std::vector<std::string> base_;
    std::vector<std::string> fiber_;
    std::vector<std::string> names_;
};

inline bool same_context(const ContextPtr& a, const ContextPtr& b)
{
    return a && b && same_context(*a, *b);
}

} // namespace chv
