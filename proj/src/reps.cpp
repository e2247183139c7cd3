#include "ffvar/reps.hpp"

#include "ffvar/extfield.hpp"

#include <cmath>
#include <stdexcept>

namespace ffvar {

bool Representation::is_ramified(const Poly& prime) const {
    for (const auto& v : ramified_places())
        if (v == prime) return true;
    return false;
}

namespace {

class TrivialRep final : public Representation {
public:
    explicit TrivialRep(const FieldSpec& F) : Representation(F) {}
    RepKind kind() const override { return RepKind::trivial; }
    std::string name() const override { return "trivial"; }
    int dim() const override { return 1; }
    int weight() const override { return 0; }
    const std::vector<Poly>& ramified_places() const override { return none_; }
    int64_t local_trace(const Poly&, int) const override { return 1; }
    int local_dim(const Poly&) const override { return 1; }

private:
    std::vector<Poly> none_;
};

class LegendreRep final : public Representation {
public:
    explicit LegendreRep(const FieldSpec& F) : Representation(F) {
        ramified_ = {poly_t(), poly_from_codes({gf_neg(F, gf_one()).v, 1})};  // t, t-1
    }
    RepKind kind() const override { return RepKind::legendre; }
    std::string name() const override { return "legendre"; }
    int dim() const override { return 2; }
    int weight() const override { return 1; }
    const std::vector<Poly>& ramified_places() const override { return ramified_; }
    int local_dim(const Poly& prime) const override { return is_ramified(prime) ? 1 : 2; }

    int64_t local_trace(const Poly& prime, int m) const override {
        if (is_ramified(prime)) return legendre_bad_trace(F_, prime, m);
        const uint64_t key = (poly_code(F_, prime, prime.deg() + 1) << 6) | uint64_t(m);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        int64_t val = legendre_good_trace(F_, prime, m);
        std::lock_guard<std::mutex> lock(mu_);
        cache_.emplace(key, val);
        return val;
    }

private:
    std::vector<Poly> ramified_;
    mutable std::mutex mu_;
    mutable std::map<uint64_t, int64_t> cache_;
};

}  // namespace

RepPtr trivial_rep(const FieldSpec& F) { return std::make_shared<TrivialRep>(F); }

RepPtr legendre_rep(const FieldSpec& F) {
    if (F.p <= 3)
        throw std::invalid_argument("legendre_rep: characteristic must exceed 3");
    return std::make_shared<LegendreRep>(F);
}

RepPtr make_rep(const FieldSpec& F, RepKind kind) {
    return kind == RepKind::trivial ? trivial_rep(F) : legendre_rep(F);
}

RepPtr make_rep(const FieldSpec& F, const std::string& selector) {
    if (selector == "trivial") return trivial_rep(F);
    if (selector == "legendre") return legendre_rep(F);
    throw std::invalid_argument("unknown representation selector: " + selector);
}

int64_t legendre_good_trace(const FieldSpec& F, const Poly& prime, int m) {
    if (F.p <= 3) throw std::invalid_argument("legendre_good_trace: characteristic");
    if (prime == poly_t() || prime == poly_from_codes({gf_neg(F, gf_one()).v, 1}))
        throw std::invalid_argument("legendre_good_trace: ramified place");
    const int d = prime.deg();
    ExtField E = make_ext(F, prime);
    if (E.N > (int64_t(1) << 25))
        throw std::invalid_argument("legendre_good_trace: residue field too large for direct count");
    auto chi = quadratic_character_table(E);
    const uint32_t theta = ext_t_class(E);
    // a_1 = q_v + 1 - #E(kappa_v); the affine count is sum_x (1 + chi(rhs)),
    // plus one point at infinity
    int64_t chi_sum = 0;
    for (int64_t x = 0; x < E.N; ++x) {
        uint32_t rhs = E.mul(uint32_t(x), E.mul(E.sub(uint32_t(x), 1), E.sub(uint32_t(x), theta)));
        chi_sum += chi[rhs];
    }
    int64_t a1 = -chi_sum;  // q_v + 1 - (q_v + chi_sum + 1)
    const int64_t qv = E.N;
    if (a1 * a1 > 4 * qv) throw std::logic_error("legendre_good_trace: Hasse bound violated");
    // power sums of the two Frobenius eigenvalues (product q_v)
    int64_t s0 = 2, s1 = a1;
    if (m == 0) return s0;
    for (int i = 2; i <= m; ++i) {
        int64_t s2 = a1 * s1 - qv * s0;
        s0 = s1;
        s1 = s2;
    }
    return s1;
}

int64_t legendre_bad_trace(const FieldSpec& F, const Poly& prime, int m) {
    if (F.p <= 3) throw std::invalid_argument("legendre_bad_trace: characteristic");
    Poly t = poly_t();
    Poly t1 = poly_from_codes({gf_neg(F, gf_one()).v, 1});
    if (!(prime == t || prime == t1))
        throw std::invalid_argument("legendre_bad_trace: place is not ramified");
    // theta = 0 (place t) or 1 (place t-1); the cubic degenerates to a nodal
    // curve and we count nonsingular points directly
    FieldElement theta = prime == t ? gf_zero() : gf_one();
    FieldElement node_x = prime == t ? gf_zero() : gf_one();  // double root of the cubic
    int64_t count = 1;  // point at infinity
    for (auto x : enumerate_elements(F)) {
        FieldElement rhs = gf_mul(F, x, gf_mul(F, gf_sub(F, x, gf_one()), gf_sub(F, x, theta)));
        for (auto y : enumerate_elements(F)) {
            if (gf_mul(F, y, y) != rhs) continue;
            if (x == node_x && y.v == 0) continue;  // the node itself
            ++count;
        }
    }
    int64_t a1 = F.q - count;
    if (a1 != 1 && a1 != -1) throw std::logic_error("legendre_bad_trace: trace not +-1");
    int64_t r = 1;
    for (int i = 0; i < m; ++i) r *= a1;
    return r;
}

int64_t von_mangoldt(const Representation& rep, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("von_mangoldt: zero polynomial");
    auto pp = prime_power_form(rep.field(), f);
    if (!pp) return 0;
    return int64_t(pp->prime.deg()) * rep.local_trace(pp->prime, pp->exponent);
}

}  // namespace ffvar
