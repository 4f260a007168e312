#pragma once

#include <cstddef>

// Dense real kernels used by the algebra layer. Every entry point has a
// scalar reference version; SIMD versions are picked once at startup.
namespace hsym::kernels {

enum class Isa { Scalar, Avx2, Neon };

// c[m x n] = a[m x k] * b[n x k]^T, all row-major and densely packed.
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
double dot(std::size_t n, const double* x, const double* y);
// y += alpha * x
void axpy(std::size_t n, double alpha, const double* x, double* y);
double max_abs(std::size_t n, const double* x);

Isa active_isa();
bool isa_available(Isa isa);
// Switches the dispatch table. Returns false (and keeps the old one) when the
// CPU cannot run `isa`.
bool select_isa(Isa isa);
const char* isa_name(Isa isa);

namespace scalar {
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double max_abs(std::size_t n, const double* x);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HSYM_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double max_abs(std::size_t n, const double* x);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define HSYM_HAVE_NEON_KERNELS 1
namespace neon {
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double max_abs(std::size_t n, const double* x);
}  // namespace neon
#endif

}  // namespace hsym::kernels
