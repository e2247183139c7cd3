#include "ffvar/chars.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ffvar {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> ps;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::vector<int64_t> divisors_sorted(int64_t n) {
    std::vector<int64_t> ds;
    for (int64_t d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace

uint32_t UnitGroupTable::mul(uint32_t a, uint32_t b) const {
    const int64_t q = F->q;
    uint32_t da[16], db[16];
    for (int i = 0; i < m; ++i) {
        da[i] = a % q;
        a /= uint32_t(q);
        db[i] = b % q;
        b /= uint32_t(q);
    }
    uint32_t out = 0;
    for (int s = m - 1; s >= 0; --s) {
        FieldElement acc{0};
        for (int i = 0; i <= s; ++i)
            acc = gf_add(*F, acc, gf_mul(*F, FieldElement{da[i]}, FieldElement{db[s - i]}));
        out = out * uint32_t(q) + acc.v;
    }
    return out;
}

uint32_t UnitGroupTable::pow(uint32_t a, int64_t e) const {
    uint32_t r = 1;
    e %= order;
    if (e < 0) e += order;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint32_t UnitGroupTable::inverse(uint32_t a) const { return pow(a, order - 1); }

uint32_t UnitGroupTable::reduce(const Poly& f) const {
    return uint32_t(poly_code(*F, f, m));
}

int64_t UnitGroupTable::phase_of(uint32_t code, const std::vector<int64_t>& exponents) const {
    const int r = rank();
    const uint32_t* d = &dlog[size_t(unit_index[code]) * r];
    int64_t ph = 0;
    for (int i = 0; i < r; ++i)
        ph = (ph + exponents[i] * d[i] % phase_lcm * (phase_lcm / orders[i])) % phase_lcm;
    return ph;
}

UnitGroupTable build_unit_group(const FieldSpec& F, int m) {
    if (m < 1 || m > 15) throw std::invalid_argument("unit group: need 1 <= m <= 15");
    UnitGroupTable G;
    G.F = &F;
    G.m = m;
    G.qm = 1;
    for (int i = 0; i < m; ++i) {
        G.qm *= F.q;
        if (G.qm > (int64_t(1) << 31)) throw std::invalid_argument("unit group: q^m too large");
    }
    G.order = (F.q - 1) * (G.qm / F.q);
    if (G.order > 10'000'000) throw std::invalid_argument("unit group: order exceeds 10^7");

    G.unit_index.assign(size_t(G.qm), -1);
    G.unit_codes.reserve(size_t(G.order));
    for (int64_t c = 0; c < G.qm; ++c)
        if (c % F.q != 0) {
            G.unit_index[size_t(c)] = int32_t(G.unit_codes.size());
            G.unit_codes.push_back(uint32_t(c));
        }

    // Orders of all elements, for maximal-order picks.
    const auto group_primes = prime_factors(G.order);
    auto element_order = [&](uint32_t g) {
        int64_t e = G.order;
        for (int64_t p : group_primes)
            while (e % p == 0 && G.pow(g, e / p) == 1) e /= p;
        return e;
    };
    std::vector<int64_t> ord(G.unit_codes.size());
    for (size_t i = 0; i < G.unit_codes.size(); ++i) ord[i] = element_order(G.unit_codes[i]);

    // index of codes currently inside the generated subgroup H, with their dlog
    std::vector<int32_t> in_H(size_t(G.qm), -1);
    std::vector<uint32_t> H_codes{1};
    std::vector<std::vector<int64_t>> H_dlog{{}};
    in_H[1] = 0;

    auto rebuild_H = [&]() {
        for (uint32_t c : H_codes) in_H[c] = -1;
        H_codes.assign(1, 1);
        H_dlog.assign(1, std::vector<int64_t>(G.generators.size(), 0));
        in_H[1] = 0;
        for (size_t gi = 0; gi < G.generators.size(); ++gi) {
            const size_t base = H_codes.size();
            uint32_t gpow = 1;
            for (int64_t e = 1; e < G.orders[gi]; ++e) {
                gpow = G.mul(gpow, G.generators[gi]);
                for (size_t j = 0; j < base; ++j) {
                    uint32_t c = G.mul(H_codes[j], gpow);
                    if (in_H[c] != -1) throw std::logic_error("unit group: collision in closure");
                    in_H[c] = int32_t(H_codes.size());
                    H_codes.push_back(c);
                    auto dv = H_dlog[j];
                    dv[gi] = e;
                    H_dlog.push_back(std::move(dv));
                }
            }
        }
    };

    // Repeatedly adjoin an element of maximal order in Gamma/H, lifted so its
    // group order equals its quotient order (classic basis construction).
    while (int64_t(H_codes.size()) < G.order) {
        int64_t best_qord = 1;
        uint32_t best = 1;
        for (size_t i = 0; i < G.unit_codes.size(); ++i) {
            const uint32_t g = G.unit_codes[i];
            if (in_H[g] != -1 || ord[i] <= best_qord) continue;
            // order of gH in the quotient: least divisor j of ord(g) with g^j in H
            for (int64_t j : divisors_sorted(ord[i]))
                if (in_H[G.pow(g, j)] != -1) {
                    if (j > best_qord) {
                        best_qord = j;
                        best = g;
                    }
                    break;
                }
        }
        if (best_qord <= 1) throw std::logic_error("unit group: no progress in decomposition");
        // Lift: h = best^qord lies in H; divide out an qord-th root of h.
        uint32_t lifted = best;
        const auto& hd = H_dlog[size_t(in_H[G.pow(best, best_qord)])];
        for (size_t i = 0; i < G.generators.size(); ++i) {
            const int64_t oi = G.orders[i], ai = hd[i];
            if (ai == 0) continue;
            const int64_t g2 = std::gcd(best_qord, oi);
            if (ai % g2 != 0) throw std::logic_error("unit group: non-liftable generator pick");
            // solve b·qord ≡ ai (mod oi)
            const int64_t oi_r = oi / g2, q_r = (best_qord / g2) % oi_r, a_r = (ai / g2) % oi_r;
            int64_t inv = 1; // inverse of q_r mod oi_r
            for (int64_t x = 1; x < oi_r; ++x)
                if (x * q_r % oi_r == 1) {
                    inv = x;
                    break;
                }
            const int64_t b = a_r * inv % oi_r;
            lifted = G.mul(lifted, G.inverse(G.pow(G.generators[i], b)));
        }
        if (G.pow(lifted, best_qord) != 1 || element_order(lifted) != best_qord)
            throw std::logic_error("unit group: lift failed");
        G.generators.push_back(lifted);
        G.orders.push_back(best_qord);
        rebuild_H();
    }

    // Freeze the dlog table from the final closure.
    const int r = G.rank();
    G.dlog.assign(G.unit_codes.size() * size_t(r), 0);
    int64_t check = 1;
    for (int64_t o : G.orders) check *= o;
    if (check != G.order) throw std::logic_error("unit group: order mismatch");
    for (size_t j = 0; j < H_codes.size(); ++j) {
        const int32_t idx = G.unit_index[H_codes[j]];
        if (idx < 0) throw std::logic_error("unit group: closure left the unit set");
        for (int i = 0; i < r; ++i) G.dlog[size_t(idx) * r + i] = uint32_t(H_dlog[j][i]);
    }
    G.phase_lcm = 1;
    for (int64_t o : G.orders) G.phase_lcm = std::lcm(G.phase_lcm, o);
    return G;
}

bool DirichletCharacter::is_trivial() const {
    return std::all_of(e.begin(), e.end(), [](int64_t x) { return x == 0; });
}

int64_t DirichletCharacter::phase_at(uint32_t code) const { return G->phase_of(code, e); }

std::complex<double> DirichletCharacter::value_at(uint32_t code) const {
    if (!G->is_unit(code)) return 0.0;
    return std::polar(1.0, kTau * double(phase_at(code)) / double(G->phase_lcm));
}

std::complex<double> DirichletCharacter::operator()(const Poly& f) const {
    return value_at(G->reduce(f));
}

int DirichletCharacter::conductor_exponent() const {
    if (is_trivial()) return 0;
    const int64_t q = G->F->q;
    for (int c = 1; c <= G->m; ++c) {
        // units congruent to 1 mod t^c: low digits (1, 0, ..., 0), rest free
        int64_t stride = 1;
        for (int i = 0; i < c; ++i) stride *= q;
        bool trivial_on_layer = true;
        for (int64_t code = 1; code < G->qm && trivial_on_layer; code += stride)
            trivial_on_layer = phase_at(uint32_t(code)) == 0;
        if (trivial_on_layer) return c;
    }
    return G->m;
}

std::string DirichletCharacter::serialize() const {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]) + "/" + std::to_string(G->orders[i]);
    }
    return s;
}

DirichletCharacter make_character(const UnitGroupTable& G, std::vector<int64_t> exponents) {
    if (int(exponents.size()) != G.rank())
        throw std::invalid_argument("character: exponent count != rank");
    DirichletCharacter chi;
    chi.G = &G;
    chi.e = std::move(exponents);
    for (int i = 0; i < G.rank(); ++i) {
        chi.e[i] %= G.orders[i];
        if (chi.e[i] < 0) chi.e[i] += G.orders[i];
    }
    chi.even = true;
    for (int64_t c = 1; c < G.F->q; ++c)
        if (chi.phase_at(uint32_t(c)) != 0) {
            chi.even = false;
            break;
        }
    return chi;
}

DirichletCharacter trivial_character(const UnitGroupTable& G) {
    return make_character(G, std::vector<int64_t>(G.rank(), 0));
}

DirichletCharacter parse_character(const UnitGroupTable& G, const std::string& text) {
    std::vector<int64_t> es;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(pos, comma - pos);
        const size_t slash = tok.find('/');
        es.push_back(std::stoll(tok.substr(0, slash)));
        if (slash != std::string::npos) {
            const int64_t o = std::stoll(tok.substr(slash + 1));
            if (int(es.size()) <= G.rank() && o != G.orders[es.size() - 1])
                throw std::invalid_argument("character: order mismatch in '" + tok + "'");
        }
        pos = comma + 1;
    }
    return make_character(G, std::move(es));
}

std::vector<DirichletCharacter> enumerate_characters(const UnitGroupTable& G, bool even_only,
                                                     bool exclude_trivial) {
    std::vector<DirichletCharacter> out;
    std::vector<int64_t> e(G.rank(), 0);
    while (true) {
        auto chi = make_character(G, e);
        const bool keep = (!even_only || chi.even) && (!exclude_trivial || !chi.is_trivial());
        if (keep) out.push_back(std::move(chi));
        int i = 0;
        for (; i < G.rank(); ++i) {
            if (++e[i] < G.orders[i]) break;
            e[i] = 0;
        }
        if (i == G.rank()) break;
    }
    return out;
}

double OrthogonalityReport::max_residual() const {
    return std::max({residual_residue_pairs, residual_char_pairs, residual_even_pairs});
}

OrthogonalityReport orthogonality_check(const UnitGroupTable& G) {
    OrthogonalityReport rep;
    const auto all_chars = enumerate_characters(G, false, false);
    const auto even_chars = enumerate_characters(G, true, false);
    const size_t nu = G.unit_codes.size();

    // Cache per-character phases over all units (int64 exact).
    const int64_t L = G.phase_lcm;
    std::vector<std::complex<double>> roots(static_cast<size_t>(L));
    for (int64_t j = 0; j < L; ++j) roots[size_t(j)] = std::polar(1.0, kTau * double(j) / double(L));
    std::vector<std::vector<int64_t>> phases(all_chars.size(), std::vector<int64_t>(nu));
    for (size_t ci = 0; ci < all_chars.size(); ++ci)
        for (size_t ui = 0; ui < nu; ++ui)
            phases[ci][ui] = all_chars[ci].phase_at(G.unit_codes[ui]);

    // relation 1: over residue pairs, sum over characters
    for (size_t a = 0; a < nu; ++a)
        for (size_t b = 0; b < nu; ++b) {
            std::complex<double> s = 0;
            for (size_t ci = 0; ci < all_chars.size(); ++ci) {
                int64_t ph = phases[ci][a] - phases[ci][b];
                if (ph < 0) ph += L;
                s += roots[size_t(ph)];
            }
            s /= double(all_chars.size());
            const double target = a == b ? 1.0 : 0.0;
            rep.residual_residue_pairs =
                std::max(rep.residual_residue_pairs, std::abs(s - target));
        }

    // relation 2: over character pairs, sum over residues
    for (size_t c1 = 0; c1 < all_chars.size(); ++c1)
        for (size_t c2 = 0; c2 < all_chars.size(); ++c2) {
            std::complex<double> s = 0;
            for (size_t ui = 0; ui < nu; ++ui) {
                int64_t ph = phases[c1][ui] - phases[c2][ui];
                if (ph < 0) ph += L;
                s += roots[size_t(ph)];
            }
            s /= double(nu);
            const double target = c1 == c2 ? 1.0 : 0.0;
            rep.residual_char_pairs = std::max(rep.residual_char_pairs, std::abs(s - target));
        }

    // relation 3: even pairs, sum over units with constant coefficient 1
    std::vector<size_t> one_units;
    for (size_t ui = 0; ui < nu; ++ui)
        if (G.unit_codes[ui] % G.F->q == 1) one_units.push_back(ui);
    for (const auto& chi1 : even_chars)
        for (const auto& chi2 : even_chars) {
            std::complex<double> s = 0;
            for (size_t ui : one_units) {
                int64_t ph = chi1.phase_at(G.unit_codes[ui]) - chi2.phase_at(G.unit_codes[ui]);
                if (ph < 0) ph += L;
                s += roots[size_t(ph)];
            }
            s /= double(even_chars.size());
            const double target = chi1.e == chi2.e ? 1.0 : 0.0;
            rep.residual_even_pairs = std::max(rep.residual_even_pairs, std::abs(s - target));
        }
    return rep;
}

} // namespace ffvar
