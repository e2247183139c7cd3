#include "ffvar/extfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffvar {

namespace {

constexpr int kMaxDeg = 32;

// digit scratch on the stack
struct Digits {
    uint16_t v[kMaxDeg];
};

inline void decode(const ExtField& E, uint32_t a, Digits& out) {
    uint64_t v = a;
    for (int i = 0; i < E.d; ++i) { out.v[i] = uint16_t(v % E.q); v /= E.q; }
}

inline uint32_t encode(const ExtField& E, const Digits& in) {
    uint64_t v = 0;
    for (int i = E.d - 1; i >= 0; --i) v = v * E.q + in.v[i];
    return uint32_t(v);
}

}  // namespace

uint32_t ExtField::add(uint32_t a, uint32_t b) const {
    if (d == 1) return addt[a * q + b];
    uint64_t va = a, vb = b, out = 0, mult_ = 1;
    for (int i = 0; i < d; ++i) {
        out += mult_ * addt[(va % q) * q + (vb % q)];
        va /= q; vb /= q; mult_ *= q;
    }
    return uint32_t(out);
}

uint32_t ExtField::neg(uint32_t a) const {
    uint64_t va = a, out = 0, mult_ = 1;
    for (int i = 0; i < d; ++i) {
        out += mult_ * negt[va % q];
        va /= q; mult_ *= q;
    }
    return uint32_t(out);
}

uint32_t ExtField::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t ExtField::scalar_mul(uint32_t c, uint32_t a) const {
    uint64_t va = a, out = 0, mult_ = 1;
    for (int i = 0; i < d; ++i) {
        out += mult_ * mult[c * q + va % q];
        va /= q; mult_ *= q;
    }
    return uint32_t(out);
}

uint32_t ExtField::mul(uint32_t a, uint32_t b) const {
    if (d == 1) return mult[a * q + b];
    Digits da, db;
    decode(*this, a, da);
    decode(*this, b, db);
    uint16_t acc[2 * kMaxDeg] = {0};
    for (int i = 0; i < d; ++i) {
        uint16_t ai = da.v[i];
        if (!ai) continue;
        const uint16_t* mrow = &mult[ai * q];
        for (int j = 0; j < d; ++j)
            acc[i + j] = addt[acc[i + j] * q + mrow[db.v[j]]];
    }
    // fold t^(d+i) rows back in
    for (int i = d - 2; i >= 0; --i) {
        uint16_t c = acc[d + i];
        if (!c) continue;
        const uint16_t* rrow = &red[size_t(i) * d];
        const uint16_t* mrow = &mult[c * q];
        for (int j = 0; j < d; ++j)
            acc[j] = addt[acc[j] * q + mrow[rrow[j]]];
    }
    uint64_t out = 0;
    for (int i = d - 1; i >= 0; --i) out = out * q + acc[i];
    return uint32_t(out);
}

uint32_t ExtField::pow(uint32_t a, int64_t e) const {
    uint32_t r = 1, base_ = a;
    while (e) {
        if (e & 1) r = mul(r, base_);
        e >>= 1;
        if (e) base_ = mul(base_, base_);
    }
    return r;
}

uint32_t ExtField::frob(uint32_t a) const {
    uint64_t va = a;
    uint32_t out = 0;
    for (int i = 0; i < d; ++i) {
        uint16_t c = uint16_t(va % q);
        if (c) out = add(out, simg[size_t(i) * q + c]);
        va /= q;
    }
    return out;
}

uint16_t ExtField::trace(uint32_t a) const {
    uint64_t va = a;
    uint16_t acc = 0;
    for (int i = 0; i < d; ++i) {
        uint16_t c = uint16_t(va % q);
        if (c) acc = addt[acc * q + mult[c * q + trace_basis[i]]];
        va /= q;
    }
    return acc;
}

bool ext_modulus_is_irreducible(const FieldSpec& F, const Poly& f) {
    const int d = f.deg();
    if (d < 1 || !is_monic(f)) return false;
    auto xq = [&](Poly g, int times) {
        for (int i = 0; i < times; ++i) {
            Poly r = poly_const(gf_one());
            Poly b = g;
            int64_t e = F.q;
            while (e) {
                if (e & 1) r = poly_mod(F, poly_mul(F, r, b), f);
                e >>= 1;
                if (e) b = poly_mod(F, poly_mul(F, b, b), f);
            }
            g = r;
        }
        return g;
    };
    Poly x = poly_t();
    Poly xqd = xq(x, d);
    if (!poly_mod(F, poly_sub(F, xqd, x), f).is_zero()) return false;
    for (int64_t ell = 2; ell <= d; ++ell) {
        if (d % ell || !is_prime_i64(ell)) continue;
        Poly g = poly_sub(F, xq(x, d / int(ell)), x);
        // gcd(g, f) must be 1
        Poly a = f, b = poly_mod(F, g, f);
        while (!b.is_zero()) {
            Poly r = poly_mod(F, a, b);
            a = b;
            b = r;
        }
        if (a.deg() != 0) return false;
    }
    return true;
}

ExtField make_ext(const FieldSpec& F, int d) {
    if (d < 1 || d > kMaxDeg) throw std::invalid_argument("make_ext: bad degree");
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= uint64_t(F.q);
    for (uint64_t code = 0; code < count; ++code) {
        Poly f = poly_from_code(F, code, d);
        f.c.resize(d + 1, {0});
        f.c[d] = {1};
        if (ext_modulus_is_irreducible(F, f)) return make_ext(F, f);
    }
    throw std::logic_error("make_ext: modulus search ran away");
}

ExtField make_ext(const FieldSpec& F, const Poly& mod) {
    const int d = mod.deg();
    if (d < 1 || d > kMaxDeg) throw std::invalid_argument("make_ext: bad degree");
    if (F.q > 64) throw std::invalid_argument("make_ext: base field too large");
    if (!ext_modulus_is_irreducible(F, mod))
        throw std::invalid_argument("make_ext: modulus not monic irreducible");
    ExtField E;
    E.base = &F;
    E.d = d;
    E.q = F.q;
    E.qpow.assign(d + 1, 1);
    for (int i = 1; i <= d; ++i) {
        E.qpow[i] = E.qpow[i - 1] * uint64_t(F.q);
        if (E.qpow[i] > (uint64_t(1) << 33))
            throw std::invalid_argument("make_ext: q^d too large");
    }
    E.N = int64_t(E.qpow[d]);

    int64_t q = F.q;
    E.addt.resize(q * q);
    E.mult.resize(q * q);
    E.negt.resize(q);
    for (int64_t a = 0; a < q; ++a) {
        E.negt[a] = uint16_t(gf_neg(F, {uint32_t(a)}).v);
        for (int64_t b = 0; b < q; ++b) {
            E.addt[a * q + b] = uint16_t(gf_add(F, {uint32_t(a)}, {uint32_t(b)}).v);
            E.mult[a * q + b] = uint16_t(gf_mul(F, {uint32_t(a)}, {uint32_t(b)}).v);
        }
    }

    E.modulus.resize(d + 1);
    for (int i = 0; i <= d; ++i) E.modulus[i] = mod.coeff(i).v;

    // reduction rows: t^(d+i) mod f
    E.red.assign(size_t(std::max(d - 1, 0)) * d, 0);
    {
        std::vector<uint16_t> cur(d);  // t^d mod f = -lower part of f
        for (int j = 0; j < d; ++j) cur[j] = uint16_t(gf_neg(F, mod.c[j]).v);
        for (int i = 0; i < d - 1; ++i) {
            for (int j = 0; j < d; ++j) E.red[size_t(i) * d + j] = cur[j];
            // multiply cur by t
            uint16_t top = cur[d - 1];
            for (int j = d - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (top) {
                for (int j = 0; j < d; ++j) {
                    uint32_t prod = E.mult[top * q + uint16_t(gf_neg(F, mod.c[j]).v)];
                    cur[j] = E.addt[cur[j] * q + prod];
                }
            }
        }
    }

    // Frobenius images of the basis and their scalar multiples
    E.simg.assign(size_t(d) * q, 0);
    {
        // tq = t^q computed by square-and-multiply on codes: need mul, which
        // needs simg unset -- mul only uses addt/mult/red, fine.
        uint32_t t_code = d == 1 ? E.modulus[0] ? uint32_t(gf_neg(F, {E.modulus[0]}).v) : 0
                                 : uint32_t(q);
        // for d = 1 the class of t is the root of the linear modulus
        uint32_t tq = E.pow(t_code, F.q);
        uint32_t img = 1;  // (t^0)^q
        for (int i = 0; i < d; ++i) {
            for (int64_t c = 0; c < q; ++c)
                E.simg[size_t(i) * q + c] = E.scalar_mul(uint32_t(c), img);
            img = E.mul(img, tq);
        }
    }

    // trace of basis elements: Tr(t^i) = sum_j (t^i)^(q^j)
    E.trace_basis.assign(d, 0);
    for (int i = 0; i < d; ++i) {
        uint32_t b = uint32_t(E.qpow[i]);
        uint32_t acc = 0, cur = b;
        for (int j = 0; j < d; ++j) {
            acc = E.add(acc, cur);
            cur = E.frob(cur);
        }
        if (!E.is_base(acc)) throw std::logic_error("make_ext: trace left the base field");
        E.trace_basis[i] = uint16_t(acc);
    }
    return E;
}

uint32_t ext_t_class(const ExtField& E) {
    if (E.d == 1)
        return E.modulus[0] ? uint32_t(gf_neg(*E.base, {E.modulus[0]}).v) : 0;
    return uint32_t(E.q);
}

std::vector<uint32_t> frobenius_table(const ExtField& E) {
    std::vector<uint32_t> tab(size_t(E.N));
    tab[0] = 0;
    for (int i = 0; i < E.d; ++i) {
        uint64_t block = E.qpow[i];
        for (uint32_t c = 1; c < E.q; ++c) {
            uint32_t base_img = E.simg[size_t(i) * E.q + c];
            uint64_t off = block * c;
            tab[off] = base_img;
#pragma omp parallel for schedule(static)
            for (int64_t x = 1; x < int64_t(block); ++x)
                tab[off + x] = E.add(tab[x], base_img);
        }
    }
    return tab;
}

std::vector<int8_t> quadratic_character_table(const ExtField& E) {
    if (E.base->p == 2) throw std::invalid_argument("quadratic character needs odd q");
    std::vector<int8_t> chi(size_t(E.N), -1);
    chi[0] = 0;
#pragma omp parallel for schedule(static)
    for (int64_t x = 1; x < E.N; ++x) {
        uint32_t s = E.mul(uint32_t(x), uint32_t(x));
        int8_t& slot = chi[s];
#pragma omp atomic write
        slot = 1;
    }
    return chi;
}

// low-order coefficients of prod_j (t - conj[j]), truncated to m slots
static void minpoly_coeffs(const ExtField& E, const uint32_t* conj, int m, uint32_t* P) {
    for (int i = 0; i < m; ++i) P[i] = 0;
    P[0] = E.neg(conj[0]);
    if (m > 1) P[1] = 1;
    int len = std::min(2, m);
    for (int j = 1; j < E.d; ++j) {
        uint32_t s = E.neg(conj[j]);
        int newlen = std::min(len + 1, m);
        for (int i = newlen - 1; i >= 0; --i) {
            uint32_t shifted = (i > 0 && i - 1 < len) ? P[i - 1] : 0;
            uint32_t scaled = i < len ? E.mul(s, P[i]) : 0;
            P[i] = E.add(shifted, scaled);
        }
        len = newlen;
    }
    for (int i = 0; i < m; ++i)
        if (!E.is_base(P[i])) throw std::logic_error("minpoly: coefficient not in F_q");
}

uint32_t minpoly_code(const ExtField& E, const uint32_t* conj, int slots) {
    int m = std::min(slots, E.d + 1);
    uint32_t P[kMaxDeg + 2];
    minpoly_coeffs(E, conj, m, P);
    uint64_t code = 0;
    for (int i = m - 1; i >= 0; --i) code = code * uint64_t(E.q) + P[i];
    if (code > 0xffffffffull) throw std::logic_error("minpoly_code: code overflow");
    return uint32_t(code);
}

Poly minpoly(const ExtField& E, const uint32_t* conj) {
    uint32_t P[kMaxDeg + 2];
    minpoly_coeffs(E, conj, E.d + 1, P);
    std::vector<uint32_t> digits(P, P + E.d + 1);
    return poly_from_codes(digits);
}

}  // namespace ffvar
