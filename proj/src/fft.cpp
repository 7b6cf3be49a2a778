#include "cubeavg/fft.hpp"

#include <bit>
#include <stdexcept>

namespace cubeavg {

void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a nonzero power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // twiddles for the largest stage; stage k reuses every (n/len)-th entry
    std::vector<cplx> tw(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = cis(sign * static_cast<double>(k) / static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }

    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

std::vector<cplx> linear_convolution(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.empty() || v.empty())
        throw std::invalid_argument("linear_convolution: empty input");
    const std::size_t out_len = u.size() + v.size() - 1;
    std::size_t m = std::bit_ceil(out_len);

    std::vector<cplx> fu(m), fv(m);
    std::copy(u.begin(), u.end(), fu.begin());
    std::copy(v.begin(), v.end(), fv.begin());
    fft_pow2(fu, false);
    fft_pow2(fv, false);
    for (std::size_t i = 0; i < m; ++i) fu[i] *= fv[i];
    fft_pow2(fu, true);
    fu.resize(out_len);
    return fu;
}

}  // namespace cubeavg
