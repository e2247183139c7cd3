#pragma once
// Exact cyclic convolution on the additive group (Z/p)^s, p odd prime.
// Used to evaluate character-sum correlations over F_{q^d} in one pass.
// Arithmetic is done modulo a 62-bit prime M = 1 (mod p); inputs are small
// (-1/0/+1) so the centered lift of the result is exact.

#include <cstdint>
#include <vector>

namespace ffvar {

struct NttPlan {
    int p = 0;
    int s = 0;
    int64_t N = 0;        // p^s
    uint64_t M = 0;       // working prime
    std::vector<uint64_t> W;     // p x p forward twiddles w^(ij)
    std::vector<uint64_t> Winv;  // inverse twiddles
    uint64_t Ninv = 0;    // N^{-1} mod M
};

NttPlan make_ntt_plan(int p, int s);

// c[z] = sum_x a[x] * b[z - x], indices as base-p digit vectors.
// a and b have length p^s with entries in {-1, 0, 1}.
std::vector<int32_t> cyclic_convolution(const NttPlan& plan,
                                        const std::vector<int8_t>& a,
                                        const std::vector<int8_t>& b);

// exposed for tests
bool miller_rabin_is_prime(uint64_t n);
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

}  // namespace ffvar
