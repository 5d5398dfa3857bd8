#pragma once

// Dense complex kernels on row-major square matrices.
//
// Every kernel comes in two flavours: a plain serial loop, kept as the
// reference the tests compare against, and an OpenMP version used by the
// library. Both produce bitwise-identical results because each output entry
// is accumulated by exactly one thread in the same order.

#include <complex>
#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace tcaudit::kernels {

using Complex = std::complex<double>;

// c = a * b, all n x n.
void matmul_serial(std::span<const Complex> a, std::span<const Complex> b,
                   std::span<Complex> c, std::size_t n);
void matmul_parallel(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> c, std::size_t n);

// Kronecker product of an na x na and an nb x nb matrix into (na*nb)^2 output.
void kron_serial(std::span<const Complex> a, std::size_t na,
                 std::span<const Complex> b, std::size_t nb,
                 std::span<Complex> out);
void kron_parallel(std::span<const Complex> a, std::size_t na,
                   std::span<const Complex> b, std::size_t nb,
                   std::span<Complex> out);

// Applies TC_AUDIT_THREADS (if set) as the OpenMP thread cap. Returns false
// when the variable is present but not a positive integer.
bool apply_thread_cap_from_env();

int max_threads();

// Runs body(i) for i in [0, count) across OpenMP threads. The first exception
// thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body)
{
    std::exception_ptr failure;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(tcaudit_parallel_for_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace tcaudit::kernels
