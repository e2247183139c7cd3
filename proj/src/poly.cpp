#include "ffvar/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace ffvar {

Poly poly_trim(Poly f) {
    while (!f.c.empty() && f.c.back().v == 0) f.c.pop_back();
    return f;
}

Poly poly_from_codes(const std::vector<uint32_t>& codes) {
    Poly f;
    f.c.reserve(codes.size());
    for (auto v : codes) f.c.push_back({v});
    return poly_trim(std::move(f));
}

Poly poly_t() { return poly_from_codes({0, 1}); }

Poly poly_const(FieldElement a) {
    Poly f;
    if (a.v) f.c.push_back(a);
    return f;
}

Poly poly_tpow(int n) {
    Poly f;
    f.c.assign(n + 1, {0});
    f.c[n] = {1};
    return f;
}

Poly poly_add(const FieldSpec& F, const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), {0});
    for (size_t i = 0; i < out.c.size(); ++i)
        out.c[i] = gf_add(F, a.coeff(int(i)), b.coeff(int(i)));
    return poly_trim(std::move(out));
}

Poly poly_neg(const FieldSpec& F, const Poly& a) {
    Poly out = a;
    for (auto& x : out.c) x = gf_neg(F, x);
    return out;
}

Poly poly_sub(const FieldSpec& F, const Poly& a, const Poly& b) {
    return poly_add(F, a, poly_neg(F, b));
}

Poly poly_mul(const FieldSpec& F, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, {0});
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i].v) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            out.c[i + j] = gf_add(F, out.c[i + j], gf_mul(F, a.c[i], b.c[j]));
    }
    return poly_trim(std::move(out));
}

Poly poly_scale(const FieldSpec& F, FieldElement s, const Poly& a) {
    Poly out = a;
    for (auto& x : out.c) x = gf_mul(F, s, x);
    return poly_trim(std::move(out));
}

Poly poly_pow(const FieldSpec& F, Poly base, int64_t e) {
    Poly r = poly_const(gf_one());
    while (e) {
        if (e & 1) r = poly_mul(F, r, base);
        e >>= 1;
        if (e) base = poly_mul(F, base, base);
    }
    return r;
}

FieldElement poly_eval(const FieldSpec& F, const Poly& f, FieldElement x) {
    FieldElement acc{0};
    for (int i = f.deg(); i >= 0; --i) acc = gf_add(F, gf_mul(F, acc, x), f.c[i]);
    return acc;
}

std::pair<Poly, Poly> divrem(const FieldSpec& F, const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    Poly r = a, q;
    int db = b.deg();
    if (a.deg() < db) return {q, r};
    q.c.assign(a.deg() - db + 1, {0});
    FieldElement li = gf_inv(F, b.lead());
    for (int i = r.deg(); i >= db; i = r.deg()) {
        FieldElement coef = gf_mul(F, r.c[i], li);
        q.c[i - db] = coef;
        for (int j = 0; j <= db; ++j)
            r.c[i - db + j] = gf_sub(F, r.c[i - db + j], gf_mul(F, coef, b.c[j]));
        r = poly_trim(std::move(r));
        if (r.is_zero()) break;
    }
    return {poly_trim(std::move(q)), r};
}

bool divides(const FieldSpec& F, const Poly& b, const Poly& a) {
    return divrem(F, a, b).second.is_zero();
}

Poly poly_mod(const FieldSpec& F, const Poly& a, const Poly& b) {
    return divrem(F, a, b).second;
}

bool is_monic(const Poly& f) { return !f.is_zero() && f.lead().v == 1; }

Poly make_monic(const FieldSpec& F, const Poly& f) {
    if (f.is_zero() || f.lead().v == 1) return f;
    return poly_scale(F, gf_inv(F, f.lead()), f);
}

uint64_t poly_code(const FieldSpec& F, const Poly& f, int len) {
    uint64_t code = 0;
    for (int i = len - 1; i >= 0; --i) code = code * uint64_t(F.q) + f.coeff(i).v;
    return code;
}

Poly poly_from_code(const FieldSpec& F, uint64_t code, int len) {
    Poly f;
    f.c.assign(len, {0});
    for (int i = 0; i < len; ++i) {
        f.c[i] = {uint32_t(code % uint64_t(F.q))};
        code /= uint64_t(F.q);
    }
    return poly_trim(std::move(f));
}

std::vector<Poly> enumerate_monic(const FieldSpec& F, int n) {
    uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= uint64_t(F.q);
    std::vector<Poly> out;
    out.reserve(count);
    for (uint64_t code = 0; code < count; ++code) {
        Poly f = poly_from_code(F, code, n);
        f.c.resize(n + 1, {0});
        f.c[n] = {1};
        out.push_back(std::move(f));
    }
    return out;
}

Factorization factorize(const FieldSpec& F, const Poly& f) {
    if (f.is_zero()) throw std::domain_error("factorize: zero polynomial");
    Factorization out;
    out.unit = f.lead();
    Poly rem = make_monic(F, f);
    for (int d = 1; 2 * d <= rem.deg(); ++d) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= uint64_t(F.q);
        for (uint64_t code = 0; code < count && 2 * d <= rem.deg(); ++code) {
            Poly g = poly_from_code(F, code, d);
            g.c.resize(d + 1, {0});
            g.c[d] = {1};
            int e = 0;
            for (;;) {
                auto [q, r] = divrem(F, rem, g);
                if (!r.is_zero()) break;
                rem = q;
                ++e;
            }
            if (e) out.powers.emplace_back(std::move(g), e);
        }
    }
    if (rem.deg() >= 1) out.powers.emplace_back(rem, 1);
    return out;
}

bool poly_is_irreducible(const FieldSpec& F, const Poly& f) {
    if (f.deg() < 1) return false;
    auto fac = factorize(F, f);
    return fac.powers.size() == 1 && fac.powers[0].second == 1;
}

std::optional<PrimePower> prime_power_form(const FieldSpec& F, const Poly& f) {
    if (f.deg() < 1) return std::nullopt;
    auto fac = factorize(F, f);
    if (fac.powers.size() != 1) return std::nullopt;
    return PrimePower{fac.powers[0].first, fac.powers[0].second, fac.unit};
}

std::vector<Poly> enumerate_irreducibles(const FieldSpec& F, int d) {
    std::vector<Poly> out;
    for (auto& f : enumerate_monic(F, d))
        if (poly_is_irreducible(F, f)) out.push_back(std::move(f));
    return out;
}

int mobius(int64_t n) {
    int m = 1;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

int64_t irreducible_count(int64_t q, int d) {
    int64_t total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        int64_t qe = 1;
        for (int i = 0; i < d / e; ++i) qe *= q;
        total += mobius(e) * qe;
    }
    return total / d;
}

Poly involute(const FieldSpec& F, const Poly& f, int n) {
    (void)F;
    if (f.deg() > n) throw std::domain_error("involute: degree exceeds slot count");
    Poly out;
    out.c.assign(n + 1, {0});
    for (int i = 0; i <= n; ++i) out.c[n - i] = f.coeff(i);
    return poly_trim(std::move(out));
}

std::vector<Poly> interval(const FieldSpec& F, const Poly& A, int h) {
    if (A.deg() < h + 1) throw std::domain_error("interval: need deg A > h");
    uint64_t count = 1;
    for (int i = 0; i <= h; ++i) count *= uint64_t(F.q);
    std::vector<Poly> out;
    out.reserve(count);
    for (uint64_t code = 0; code < count; ++code)
        out.push_back(poly_add(F, A, poly_from_code(F, code, h + 1)));
    return out;
}

std::string poly_to_string(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    for (int i = 0; i <= f.deg(); ++i) {
        if (i) os << ',';
        os << f.c[i].v;
    }
    return os.str();
}

Poly poly_from_string(const FieldSpec& F, const std::string& s) {
    Poly f;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        size_t pos = 0;
        long long v = std::stoll(item, &pos);
        if (pos != item.size() || v < 0 || v >= F.q)
            throw std::invalid_argument("poly_from_string: bad coefficient '" + item + "'");
        f.c.push_back({uint32_t(v)});
    }
    if (f.c.empty()) throw std::invalid_argument("poly_from_string: empty input");
    return poly_trim(std::move(f));
}

}  // namespace ffvar
