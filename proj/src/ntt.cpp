#include "ffvar/ntt.hpp"
#include "ffvar/gf.hpp"

#include <stdexcept>

namespace ffvar {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((unsigned __int128)(a) * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

NttPlan make_ntt_plan(int p, int s) {
    if (p < 3 || p > 13 || !is_prime_i64(p)) throw std::invalid_argument("make_ntt_plan: p");
    NttPlan plan;
    plan.p = p;
    plan.s = s;
    plan.N = 1;
    for (int i = 0; i < s; ++i) plan.N *= p;

    // largest prime below 2^62 congruent to 1 mod p
    uint64_t start = ((uint64_t(1) << 62) / p) * p + 1;
    uint64_t M = start;
    while (!miller_rabin_is_prime(M)) M -= p;
    plan.M = M;

    // element of exact order p
    uint64_t w = 0;
    for (uint64_t g = 2;; ++g) {
        uint64_t cand = powmod_u64(g, (M - 1) / p, M);
        if (cand != 1) { w = cand; break; }
    }
    uint64_t winv = powmod_u64(w, M - 2, M);
    plan.W.assign(size_t(p) * p, 0);
    plan.Winv.assign(size_t(p) * p, 0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            plan.W[size_t(i) * p + j] = powmod_u64(w, uint64_t(i) * j % p, M);
            plan.Winv[size_t(i) * p + j] = powmod_u64(winv, uint64_t(i) * j % p, M);
        }
    plan.Ninv = powmod_u64(uint64_t(plan.N) % M, M - 2, M);
    return plan;
}

static void transform(const NttPlan& plan, std::vector<uint64_t>& a, bool inverse) {
    const int p = plan.p;
    const uint64_t M = plan.M;
    const std::vector<uint64_t>& W = inverse ? plan.Winv : plan.W;
    int64_t stride = 1;
    for (int axis = 0; axis < plan.s; ++axis) {
        const int64_t block = stride * p;
#pragma omp parallel for schedule(static)
        for (int64_t base = 0; base < plan.N; base += block) {
            uint64_t buf[16];
            for (int64_t off = 0; off < stride; ++off) {
                const int64_t idx = base + off;
                for (int t = 0; t < p; ++t) buf[t] = a[idx + t * stride];
                for (int r = 0; r < p; ++r) {
                    const uint64_t* row = &W[size_t(r) * p];
                    uint64_t acc = 0;
                    for (int t = 0; t < p; ++t) {
                        acc += mulmod_u64(buf[t], row[t], M);
                        if (acc >= M) acc -= M;
                    }
                    a[idx + r * stride] = acc;
                }
            }
        }
        stride = block;
    }
}

std::vector<int32_t> cyclic_convolution(const NttPlan& plan,
                                        const std::vector<int8_t>& a,
                                        const std::vector<int8_t>& b) {
    if (int64_t(a.size()) != plan.N || int64_t(b.size()) != plan.N)
        throw std::invalid_argument("cyclic_convolution: size mismatch");
    const uint64_t M = plan.M;
    std::vector<uint64_t> A(a.size()), B(b.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < plan.N; ++i) {
        A[i] = a[i] >= 0 ? uint64_t(a[i]) : M - uint64_t(-a[i]);
        B[i] = b[i] >= 0 ? uint64_t(b[i]) : M - uint64_t(-b[i]);
    }
    transform(plan, A, false);
    transform(plan, B, false);
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < plan.N; ++i) A[i] = mulmod_u64(A[i], B[i], M);
    B.clear();
    B.shrink_to_fit();
    transform(plan, A, true);
    std::vector<int32_t> out(a.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < plan.N; ++i) {
        uint64_t v = mulmod_u64(A[i], plan.Ninv, M);
        int64_t c = v > M / 2 ? int64_t(v) - int64_t(M) : int64_t(v);
        out[i] = int32_t(c);
    }
    return out;
}

}  // namespace ffvar
