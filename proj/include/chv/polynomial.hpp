#pragma once

#include <gmpxx.h>

#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chv/monomial.hpp"
#include "chv/order.hpp"

namespace chv {

struct Term {
    Monomial mono;
    mpq_class coeff;
};

/// Sparse exact multivariate polynomial over QQ. Terms are kept sorted in
/// descending degrevlex order with no zero coefficients, so equality is
/// structural and printing is deterministic.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(ContextPtr ctx) { return Polynomial(std::move(ctx)); }

    static Polynomial constant(ContextPtr ctx, const mpq_class& c)
    {
        Polynomial p(std::move(ctx));
        if (c != 0) p.terms_.push_back({Monomial::one(*p.ctx_), c});
        return p;
    }

    static Polynomial one(ContextPtr ctx) { return constant(std::move(ctx), 1); }

    static Polynomial variable(ContextPtr ctx, std::size_t idx)
    {
        Polynomial p(ctx);
        p.terms_.push_back({Monomial::var(*ctx, idx), mpq_class(1)});
        return p;
    }

    static Polynomial variable(ContextPtr ctx, const std::string& name)
    {
        return variable(ctx, static_cast<std::size_t>(ctx->index_of(name)));
    }

    static Polynomial term(ContextPtr ctx, Monomial m, mpq_class c)
    {
        Polynomial p(std::move(ctx));
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    /// Build from unsorted term list (merges duplicates, drops zeros).
    static Polynomial from_terms(ContextPtr ctx, std::vector<Term> terms)
    {
        Polynomial p(std::move(ctx));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const ContextPtr& context() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
    }

    std::size_t num_terms() const { return terms_.size(); }

    std::uint32_t total_degree() const
    {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
        return d;
    }

    std::uint32_t fiber_degree() const
    {
        std::uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.fiber_degree());
        return d;
    }

    /// True if no fiber variable occurs.
    bool base_only() const
    {
        for (const auto& t : terms_)
            if (t.mono.fiber_degree() > 0) return false;
        return true;
    }

    const Term& leading_term(const MonomialOrder& ord) const
    {
        check_nonzero();
        if (ord.kind() == OrderKind::DegRevLex) return terms_.front();
        std::size_t best = 0;
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (ord.greater(terms_[i].mono, terms_[best].mono)) best = i;
        return terms_[best];
    }

    bool operator==(const Polynomial& o) const
    {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const
    {
        Polynomial r(ctx_);
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        a.check_same_context(b);
        Polynomial r(a.ctx_);
        r.terms_ = Polynomial::merge(a.terms_, b.terms_, false);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        a.check_same_context(b);
        Polynomial r(a.ctx_);
        r.terms_ = Polynomial::merge(a.terms_, b.terms_, true);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_same_context(b);
        Polynomial r(a.ctx_);
        if (a.is_zero() || b.is_zero()) return r;
        std::unordered_map<Monomial, mpq_class, MonomialHash> acc;
        acc.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                mpq_class c = ta.coeff * tb.coeff;
                auto [it, fresh] = acc.emplace(ta.mono * tb.mono, c);
                if (!fresh) it->second += c;
            }
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        r.sort_terms();
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const mpq_class& c)
    {
        Polynomial r(a.ctx_);
        if (c == 0) return r;
        r.terms_ = a.terms_;
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    friend Polynomial operator*(const mpq_class& c, const Polynomial& a) { return a * c; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    /// Multiply by a single term in place.
    Polynomial mul_term(const Monomial& m, const mpq_class& c) const
    {
        Polynomial r(ctx_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
        if (!m.is_one()) r.sort_terms();
        return r;
    }

    Polynomial pow(unsigned e) const
    {
        Polynomial r = one(ctx_);
        Polynomial b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = (e >>= 1) ? b * b : b;
        }
        return r;
    }

    /// Sum of the terms of maximal fiber degree (the part meeting the
    /// hyperplane at infinity after homogenizing the fiber directions).
    Polynomial maxdeg_part() const
    {
        check_nonzero();
        if (ctx_->num_fiber() == 0)
            throw std::domain_error("maxdeg_part: context has no fiber variables");
        std::uint32_t d = fiber_degree();
        Polynomial r(ctx_);
        for (const auto& t : terms_)
            if (t.mono.fiber_degree() == d) r.terms_.push_back(t);
        return r;
    }

    /// Substitute variables by polynomials (indices into this context).
    /// Targets live in `target_ctx`; unmapped variables must exist there by
    /// name. Ring homomorphism by construction.
    Polynomial substitute(const std::map<int, Polynomial>& sigma, ContextPtr target_ctx) const
    {
        for (const auto& [v, q] : sigma) {
            if (v < 0 || static_cast<std::size_t>(v) >= ctx_->num_vars())
                throw std::invalid_argument("substitute: unknown variable index");
            if (!same_context(q.context(), target_ctx))
                throw std::invalid_argument("substitute: image polynomial in wrong context");
        }
        Polynomial acc = zero(target_ctx);
        for (const auto& t : terms_) {
            Polynomial tp = constant(target_ctx, t.coeff);
            for (std::size_t i = 0; i < ctx_->num_vars(); ++i) {
                std::uint16_t e = t.mono.exp(i);
                if (!e) continue;
                auto it = sigma.find(static_cast<int>(i));
                Polynomial img = it != sigma.end()
                                     ? it->second
                                     : variable(target_ctx, ctx_->name(i));
                tp *= img.pow(e);
            }
            acc += tp;
        }
        return acc;
    }

    Polynomial substitute(const std::map<int, Polynomial>& sigma) const
    {
        ContextPtr target = sigma.empty() ? ctx_ : sigma.begin()->second.context();
        return substitute(sigma, target);
    }

    /// Kill all fiber variables (x = 0) and land in the base-only context.
    Polynomial restrict_fiber_to_zero(ContextPtr base_ctx) const
    {
        Polynomial r(base_ctx);
        std::size_t nbase = ctx_->num_base();
        for (const auto& t : terms_) {
            if (t.mono.fiber_degree() > 0) continue;
            std::vector<std::uint16_t> e(t.mono.exps().begin(), t.mono.exps().begin() + nbase);
            r.terms_.push_back({Monomial(std::move(e), nbase), t.coeff});
        }
        r.sort_terms();
        return r;
    }

    /// Rename-preserving embedding into a context containing all variables
    /// that actually occur in this polynomial.
    Polynomial lift(ContextPtr target) const
    {
        std::vector<int> map(ctx_->num_vars());
        for (std::size_t i = 0; i < ctx_->num_vars(); ++i)
            map[i] = target->find(ctx_->name(i));
        Polynomial r(target);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            std::vector<std::uint16_t> e(target->num_vars(), 0);
            for (std::size_t i = 0; i < ctx_->num_vars(); ++i) {
                if (!t.mono.exp(i)) continue;
                if (map[i] < 0)
                    throw std::invalid_argument("lift: variable " + ctx_->name(i) +
                                                " not present in target context");
                e[map[i]] = t.mono.exp(i);
            }
            r.terms_.push_back({Monomial(std::move(e), target->num_base()), t.coeff});
        }
        r.sort_terms();
        return r;
    }

    mpq_class evaluate(const std::vector<mpq_class>& point) const
    {
        if (point.size() != ctx_->num_vars())
            throw std::invalid_argument("evaluate: wrong point dimension");
        mpq_class acc = 0;
        for (const auto& t : terms_) {
            mpq_class v = t.coeff;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (std::uint16_t k = 0; k < t.mono.exp(i); ++k) v *= point[i];
            acc += v;
        }
        return acc;
    }

    Polynomial derivative(std::size_t var) const
    {
        Polynomial r(ctx_);
        for (const auto& t : terms_) {
            std::uint16_t e = t.mono.exp(var);
            if (!e) continue;
            auto exps = t.mono.exps();
            exps[var] = static_cast<std::uint16_t>(e - 1);
            r.terms_.push_back({Monomial(std::move(exps), ctx_->num_base()),
                                t.coeff * e});
        }
        r.sort_terms();
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            mpq_class c = t.coeff;
            bool neg = c < 0;
            if (neg) c = -c;
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            bool coeff_shown = (c != 1) || t.mono.is_one();
            if (coeff_shown) os << c;
            bool need_star = coeff_shown;
            for (std::size_t i = 0; i < ctx_->num_vars(); ++i) {
                std::uint16_t e = t.mono.exp(i);
                if (!e) continue;
                if (need_star) os << "*";
                os << ctx_->name(i);
                if (e > 1) os << "^" << e;
                need_star = true;
            }
        }
        return os.str();
    }

private:
    // merge of two canonically sorted term lists; negate flips b's signs
    static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b,
                                   bool negate)
    {
        std::vector<Term> r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int c;
            if (i == a.size())
                c = -1;
            else if (j == b.size())
                c = 1;
            else
                c = canonical_cmp(a[i].mono, b[j].mono);
            if (c > 0) {
                r.push_back(a[i++]);
            } else if (c < 0) {
                r.push_back({b[j].mono, negate ? mpq_class(-b[j].coeff) : b[j].coeff});
                ++j;
            } else {
                mpq_class s = negate ? mpq_class(a[i].coeff - b[j].coeff)
                                     : mpq_class(a[i].coeff + b[j].coeff);
                if (s != 0) r.push_back({a[i].mono, std::move(s)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    // canonical order: degrevlex over all variables
    static int canonical_cmp(const Monomial& a, const Monomial& b)
    {
        if (a.total_degree() != b.total_degree())
            return a.total_degree() < b.total_degree() ? -1 : 1;
        for (std::size_t i = a.nvars(); i-- > 0;)
            if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
        return 0;
    }

    void check_nonzero() const
    {
        if (terms_.empty()) throw std::domain_error("zero polynomial");
    }

    void check_same_context(const Polynomial& o) const
    {
        if (!same_context(ctx_, o.ctx_))
            throw std::invalid_argument("polynomial context mismatch");
    }

    // descending degrevlex
    void sort_terms()
    {
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
            if (a.mono.total_degree() != b.mono.total_degree())
                return a.mono.total_degree() > b.mono.total_degree();
            for (std::size_t i = a.mono.nvars(); i-- > 0;)
                if (a.mono.exp(i) != b.mono.exp(i)) return a.mono.exp(i) < b.mono.exp(i);
            return false;
        });
    }

    void normalize()
    {
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
            if (!out.empty() && out.back().coeff == 0) out.pop_back();
        }
        terms_ = std::move(out);
    }

    ContextPtr ctx_;
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    return os << p.to_string();
}

} // namespace chv
