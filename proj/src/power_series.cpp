#include "ldpcgm/power_series.hpp"

#include "ldpcgm/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>

namespace ldpcgm::series {

namespace {

constexpr std::size_t kNaiveLimit = 64;

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

Series naive_multiply(const Series& a, const Series& b, std::size_t n) {
    Series out(n, 0.0);
    const std::size_t na = std::min(a.size(), n);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0.0) continue;
        const std::size_t nb = std::min(b.size(), n - i);
        for (std::size_t j = 0; j < nb; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// FFTW_ESTIMATE keeps plan choice (and so rounding) independent of timing.
Series fft_multiply(const Series& a, const Series& b, std::size_t n) {
    const std::size_t na = std::min(a.size(), n), nb = std::min(b.size(), n);
    std::size_t len = 1;
    while (len < na + nb) len <<= 1;
    const std::size_t half = len / 2 + 1;

    auto ra = fftw_buffer<double>(len), rb = fftw_buffer<double>(len);
    auto ca = fftw_buffer<fftw_complex>(half), cb = fftw_buffer<fftw_complex>(half);
    std::fill(ra.get(), ra.get() + len, 0.0);
    std::fill(rb.get(), rb.get() + len, 0.0);
    std::copy(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(na), ra.get());
    std::copy(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(nb), rb.get());

    const int ilen = static_cast<int>(len);
    fftw_plan pa = fftw_plan_dft_r2c_1d(ilen, ra.get(), ca.get(), FFTW_ESTIMATE);
    fftw_plan pb = fftw_plan_dft_r2c_1d(ilen, rb.get(), cb.get(), FFTW_ESTIMATE);
    fftw_plan back = fftw_plan_dft_c2r_1d(ilen, ca.get(), ra.get(), FFTW_ESTIMATE);
    fftw_execute(pa);
    fftw_execute(pb);
    for (std::size_t i = 0; i < half; ++i) {
        const double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
        const double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
        ca[i][0] = re;
        ca[i][1] = im;
    }
    fftw_execute(back);
    fftw_destroy_plan(pa);
    fftw_destroy_plan(pb);
    fftw_destroy_plan(back);

    Series out(n, 0.0);
    const double scale = 1.0 / static_cast<double>(len);
    for (std::size_t i = 0; i < std::min(n, len); ++i) out[i] = ra[i] * scale;
    return out;
}

}  // namespace

Series multiply(const Series& a, const Series& b, std::size_t n) {
    if (std::min({a.size(), b.size(), n}) <= kNaiveLimit) return naive_multiply(a, b, n);
    return fft_multiply(a, b, n);
}

Series reciprocal(const Series& a, std::size_t n) {
    if (a.empty() || a[0] == 0.0) throw ValidationError("series reciprocal needs a nonzero constant term");
    Series b{1.0 / a[0]};
    std::size_t m = 1;
    while (m < n) {
        m = std::min(2 * m, n);
        // b <- b (2 - a b)
        Series ab = multiply(Series(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(m, a.size()))), b, m);
        for (auto& x : ab) x = -x;
        ab[0] += 2.0;
        b = multiply(b, ab, m);
    }
    b.resize(n);
    return b;
}

Series binomial(double alpha, std::size_t n) {
    Series c(n, 0.0);
    if (n == 0) return c;
    c[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) c[i] = c[i - 1] * (static_cast<double>(i) - 1.0 - alpha) / static_cast<double>(i);
    return c;
}

double evaluate(const Series& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

}  // namespace ldpcgm::series
