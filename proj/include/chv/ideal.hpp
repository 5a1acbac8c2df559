#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "chv/groebner.hpp"
#include "chv/polynomial.hpp"

namespace chv {

/// Value-semantic ideal: an immutable generator list plus a memo of reduced
/// Groebner bases keyed by monomial order. Copies share generators and the
/// memo; the memo is guarded for concurrent first-writer-wins computation.
class Ideal {
public:
    Ideal() = default;

    Ideal(ContextPtr ctx, std::vector<Polynomial> gens)
        : ctx_(std::move(ctx)), memo_(std::make_shared<Memo>())
    {
        // drop zero and repeated generators (exact equality); keeps prints
        // and downstream radical-membership loops lean
        std::vector<Polynomial> kept;
        for (auto& g : gens) {
            if (!same_context(g.context(), ctx_))
                throw std::invalid_argument("ideal generator context mismatch");
            if (g.is_zero()) continue;
            bool dup = false;
            for (const auto& h : kept)
                if (h == g) {
                    dup = true;
                    break;
                }
            if (!dup) kept.push_back(std::move(g));
        }
        gens_ = std::make_shared<const std::vector<Polynomial>>(std::move(kept));
    }

    static Ideal zero(ContextPtr ctx) { return Ideal(std::move(ctx), {}); }

    static Ideal unit(ContextPtr ctx)
    {
        auto one = Polynomial::one(ctx);
        return Ideal(std::move(ctx), {std::move(one)});
    }

    const ContextPtr& context() const { return ctx_; }

    const std::vector<Polynomial>& generators() const
    {
        static const std::vector<Polynomial> empty;
        return gens_ ? *gens_ : empty;
    }

    bool trivially_zero() const
    {
        for (const auto& g : generators())
            if (!g.is_zero()) return false;
        return true;
    }

    const std::vector<Polynomial>& groebner_basis(const MonomialOrder& ord) const
    {
        const std::string key = ord.cache_key();
        {
            std::lock_guard<std::mutex> lk(memo_->mu);
            auto it = memo_->gb.find(key);
            if (it != memo_->gb.end()) return *it->second;
        }
        auto gb = std::make_shared<const std::vector<Polynomial>>(buchberger(generators(), ord));
        std::lock_guard<std::mutex> lk(memo_->mu);
        auto [it, fresh] = memo_->gb.emplace(key, std::move(gb));
        return *it->second;
    }

    bool is_unit() const
    {
        for (const auto& g : generators())
            if (!g.is_zero() && g.is_constant()) return true;
        const auto& gb = groebner_basis(MonomialOrder::degrevlex(ctx_->num_vars()));
        return gb.size() == 1 && gb.front().is_constant();
    }

    /// Membership via normal form against the cached degrevlex basis.
    bool contains(const Polynomial& f) const
    {
        if (f.is_zero()) return true;
        const auto ord = MonomialOrder::degrevlex(ctx_->num_vars());
        return normal_form(f, groebner_basis(ord), ord).is_zero();
    }

    friend Ideal operator+(const Ideal& a, const Ideal& b)
    {
        if (!same_context(a.ctx_, b.ctx_)) throw std::invalid_argument("ideal context mismatch");
        std::vector<Polynomial> gens = a.generators();
        for (const auto& g : b.generators()) gens.push_back(g);
        return Ideal(a.ctx_, std::move(gens));
    }

private:
    struct Memo {
        std::mutex mu;
        std::map<std::string, std::shared_ptr<const std::vector<Polynomial>>> gb;
    };

    ContextPtr ctx_;
    std::shared_ptr<const std::vector<Polynomial>> gens_;
    std::shared_ptr<Memo> memo_;
};

} // namespace chv
