#include "ffvar/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffvar {

bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<int32_t> FieldSpec::digits(FieldElement a) const {
    std::vector<int32_t> d(k);
    uint64_t v = a.v;
    for (int i = 0; i < k; ++i) { d[i] = int32_t(v % p); v /= p; }
    return d;
}

FieldElement FieldSpec::from_digits(const std::vector<int32_t>& d) const {
    uint64_t v = 0;
    for (int i = int(d.size()) - 1; i >= 0; --i) v = v * p + uint64_t(d[i] % p);
    return {uint32_t(v)};
}

namespace {

// dense F_p[x] helpers on int32 coefficient vectors (index = degree)
int32_t inv_mod_p(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int64_t qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    return int32_t(((t % p) + p) % p);
}

int deg(const std::vector<int32_t>& a) {
    for (int i = int(a.size()) - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

// a mod b, b nonzero, in place on a copy
std::vector<int32_t> pmod(std::vector<int32_t> a, const std::vector<int32_t>& b, int64_t p) {
    int db = deg(b);
    int32_t lead_inv = inv_mod_p(b[db], p);
    for (int i = deg(a); i >= db; i = deg(a)) {
        int64_t c = (int64_t(a[i]) * lead_inv) % p;
        if (c)
            for (int j = 0; j <= db; ++j)
                a[i - db + j] = int32_t(((a[i - db + j] - c * b[j]) % p + p) % p);
        a[i] = 0;
    }
    return a;
}

bool poly_is_irreducible(const std::vector<int32_t>& f, int64_t p) {
    int d = deg(f);
    if (d < 1) return false;
    if (d == 1) return true;
    // trial division by every monic polynomial of degree 1..d/2
    std::vector<int32_t> g;
    for (int dg = 1; 2 * dg <= d; ++dg) {
        int64_t count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        g.assign(dg + 1, 0);
        g[dg] = 1;
        for (int64_t code = 0; code < count; ++code) {
            int64_t v = code;
            for (int i = 0; i < dg; ++i) { g[i] = int32_t(v % p); v /= p; }
            if (deg(pmod(f, g, p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace

FieldSpec make_field(int64_t p, int32_t k) {
    if (!is_prime_i64(p)) throw std::invalid_argument("make_field: p must be prime");
    if (k < 1) throw std::invalid_argument("make_field: k must be >= 1");
    FieldSpec F;
    F.p = p;
    F.k = k;
    F.q = 1;
    for (int i = 0; i < k; ++i) {
        F.q *= p;
        if (F.q > (int64_t(1) << 31)) throw std::invalid_argument("make_field: q too large");
    }

    // smallest irreducible monic degree-k polynomial, ordering the
    // candidates by (c_0, c_1, ..., c_{k-1})
    F.modulus.assign(k + 1, 0);
    F.modulus[k] = 1;
    if (k > 1) {
        int64_t count = F.q;  // p^k choices of lower coefficients
        bool found = false;
        std::vector<int32_t> cand(k + 1, 0);
        cand[k] = 1;
        for (int64_t code = 0; code < count && !found; ++code) {
            int64_t v = code;
            // code digits little-endian, but lex order wants c_0 most significant
            for (int i = k - 1; i >= 0; --i) { cand[i] = int32_t(v % p); v /= p; }
            if (poly_is_irreducible(cand, p)) {
                F.modulus = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("make_field: no irreducible found");
    } else {
        F.modulus = {0, 1};  // x
    }

    F.unit_order_primes = prime_factors(F.q - 1);
    F.generator = {0};
    for (int64_t c = 2; c < F.q; ++c) {
        FieldElement a{uint32_t(c)};
        bool ok = true;
        for (int64_t ell : F.unit_order_primes)
            if (gf_pow(F, a, (F.q - 1) / ell) == gf_one()) { ok = false; break; }
        if (ok) { F.generator = a; break; }
    }
    if (F.q == 2) F.generator = {1};
    if (F.generator.v == 0) throw std::logic_error("make_field: no generator found");
    return F;
}

FieldElement gf_add(const FieldSpec& F, FieldElement a, FieldElement b) {
    if (F.k == 1) return {uint32_t((a.v + b.v) % F.p)};
    uint64_t va = a.v, vb = b.v, out = 0, mult = 1;
    for (int i = 0; i < F.k; ++i) {
        out += mult * ((va + vb) % F.p);
        va /= F.p; vb /= F.p; mult *= F.p;
    }
    return {uint32_t(out)};
}

FieldElement gf_neg(const FieldSpec& F, FieldElement a) {
    if (F.k == 1) return {uint32_t((F.p - a.v) % F.p)};
    uint64_t va = a.v, out = 0, mult = 1;
    for (int i = 0; i < F.k; ++i) {
        out += mult * ((F.p - va % F.p) % F.p);
        va /= F.p; mult *= F.p;
    }
    return {uint32_t(out)};
}

FieldElement gf_sub(const FieldSpec& F, FieldElement a, FieldElement b) {
    return gf_add(F, a, gf_neg(F, b));
}

FieldElement gf_mul(const FieldSpec& F, FieldElement a, FieldElement b) {
    if (F.k == 1) return {uint32_t((uint64_t(a.v) * b.v) % F.p)};
    auto da = F.digits(a), db = F.digits(b);
    std::vector<int64_t> c(2 * F.k - 1, 0);
    for (int i = 0; i < F.k; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < F.k; ++j) c[i + j] += int64_t(da[i]) * db[j];
    }
    // reduce by the (monic) modulus
    for (int i = 2 * F.k - 2; i >= F.k; --i) {
        int64_t t = c[i] % F.p;
        if (!t) continue;
        for (int j = 0; j < F.k; ++j) {
            c[i - F.k + j] -= t * F.modulus[j];
        }
        c[i] = 0;
    }
    uint64_t out = 0, mult = 1;
    for (int i = 0; i < F.k; ++i) {
        out += mult * uint64_t(((c[i] % F.p) + F.p) % F.p);
        mult *= F.p;
    }
    return {uint32_t(out)};
}

FieldElement gf_pow(const FieldSpec& F, FieldElement a, int64_t e) {
    if (e < 0) { a = gf_inv(F, a); e = -e; }
    FieldElement r = gf_one(), base = a;
    while (e) {
        if (e & 1) r = gf_mul(F, r, base);
        base = gf_mul(F, base, base);
        e >>= 1;
    }
    return r;
}

FieldElement gf_inv(const FieldSpec& F, FieldElement a) {
    if (a.v == 0) throw std::domain_error("gf_inv: zero is not invertible");
    if (F.k == 1) return {uint32_t(inv_mod_p(a.v, F.p))};
    // extended Euclid in F_p[x] against the modulus
    std::vector<int32_t> r0 = F.modulus, r1(F.k, 0);
    auto da = F.digits(a);
    for (int i = 0; i < F.k; ++i) r1[i] = da[i];
    std::vector<int32_t> t0(F.k + 1, 0), t1(F.k + 1, 0);
    t1[0] = 1;
    while (deg(r1) > 0) {
        // r0 = q*r1 + r2
        std::vector<int32_t> r2 = r0, qpoly(F.k + 1, 0);
        int d1 = deg(r1);
        int32_t li = inv_mod_p(r1[d1], F.p);
        for (int i = deg(r2); i >= d1; i = deg(r2)) {
            int64_t c = (int64_t(r2[i]) * li) % F.p;
            qpoly[i - d1] = int32_t(c);
            if (c)
                for (int j = 0; j <= d1; ++j)
                    r2[i - d1 + j] = int32_t(((r2[i - d1 + j] - c * r1[j]) % F.p + F.p) % F.p);
            r2[i] = 0;
        }
        // t2 = t0 - q*t1
        std::vector<int32_t> t2 = t0;
        for (int i = 0; i <= F.k; ++i) {
            if (!qpoly[i]) continue;
            for (int j = 0; i + j <= F.k; ++j)
                t2[i + j] = int32_t(((t2[i + j] - int64_t(qpoly[i]) * t1[j]) % F.p + F.p) % F.p);
        }
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    if (deg(r1) != 0) throw std::logic_error("gf_inv: element not coprime to modulus");
    int32_t s = inv_mod_p(r1[0], F.p);
    std::vector<int32_t> out(F.k, 0);
    for (int i = 0; i < F.k; ++i) out[i] = int32_t((int64_t(t1[i]) * s) % F.p);
    return F.from_digits(out);
}

bool gf_is_square(const FieldSpec& F, FieldElement a) {
    if (a.v == 0 || F.p == 2) return true;  // Frobenius is onto in char 2
    return gf_pow(F, a, (F.q - 1) / 2) == gf_one();
}

FieldElement gf_scalar(const FieldSpec& F, int64_t c) {
    return {uint32_t(((c % F.p) + F.p) % F.p)};
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& F) {
    std::vector<FieldElement> out(F.q);
    for (int64_t i = 0; i < F.q; ++i) out[i] = {uint32_t(i)};
    return out;
}

int64_t gf_order(const FieldSpec& F, FieldElement a) {
    if (a.v == 0) throw std::domain_error("gf_order: zero");
    int64_t ord = F.q - 1;
    for (int64_t ell : F.unit_order_primes)
        while (ord % ell == 0 && gf_pow(F, a, ord / ell) == gf_one()) ord /= ell;
    return ord;
}

std::string field_tag(const FieldSpec& F) {
    if (F.k == 1) return std::to_string(F.p);
    return std::to_string(F.p) + "^" + std::to_string(F.k);
}

FieldSpec parse_field_tag(const std::string& tag) {
    auto caret = tag.find('^');
    try {
        if (caret != std::string::npos) {
            int64_t p = std::stoll(tag.substr(0, caret));
            int32_t k = int32_t(std::stoll(tag.substr(caret + 1)));
            return make_field(p, k);
        }
        int64_t q = std::stoll(tag);
        if (q < 2) throw std::invalid_argument("bad field tag");
        int64_t p = q;
        for (int64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) { p = d; break; }
        int32_t k = 0;
        int64_t r = q;
        while (r > 1) {
            if (r % p) throw std::invalid_argument("field size is not a prime power: " + tag);
            r /= p; ++k;
        }
        return make_field(p, k);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("unparseable field tag: " + tag);
    }
}

}  // namespace ffvar
