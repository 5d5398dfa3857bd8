#include "tcaudit/kernels.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tcaudit::kernels {

void matmul_serial(std::span<const Complex> a, std::span<const Complex> b,
                   std::span<Complex> c, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        Complex* row = c.data() + i * n;
        for (std::size_t j = 0; j < n; ++j)
            row[j] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a[i * n + k];
            if (aik == Complex{})
                continue;
            const Complex* brow = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j)
                row[j] += aik * brow[j];
        }
    }
}

void matmul_parallel(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> c, std::size_t n)
{
    const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        Complex* row = c.data() + i * n;
        for (std::size_t j = 0; j < n; ++j)
            row[j] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a[i * n + k];
            if (aik == Complex{})
                continue;
            const Complex* brow = b.data() + k * n;
            for (std::size_t j = 0; j < n; ++j)
                row[j] += aik * brow[j];
        }
    }
}

void kron_serial(std::span<const Complex> a, std::size_t na,
                 std::span<const Complex> b, std::size_t nb,
                 std::span<Complex> out)
{
    const std::size_t n = na * nb;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ia = i / nb, ib = i % nb;
        for (std::size_t j = 0; j < n; ++j)
            out[i * n + j] = a[ia * na + j / nb] * b[ib * nb + j % nb];
    }
}

void kron_parallel(std::span<const Complex> a, std::size_t na,
                   std::span<const Complex> b, std::size_t nb,
                   std::span<Complex> out)
{
    const std::size_t n = na * nb;
    const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < rows; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const std::size_t ia = i / nb, ib = i % nb;
        for (std::size_t j = 0; j < n; ++j)
            out[i * n + j] = a[ia * na + j / nb] * b[ib * nb + j % nb];
    }
}

bool apply_thread_cap_from_env()
{
    const char* raw = std::getenv("TC_AUDIT_THREADS");
    if (raw == nullptr)
        return true;
    const std::string_view text{raw};
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value <= 0)
        return false;
#ifdef _OPENMP
    omp_set_num_threads(value);
#endif
    return true;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace tcaudit::kernels
