#include <atomic>
#include <cstdlib>
#include <cstring>

#include "hsym/kernels.hpp"

namespace hsym::kernels {

namespace {

struct Table {
  Isa isa;
  void (*gemm_nt)(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
  double (*dot)(std::size_t, const double*, const double*);
  void (*axpy)(std::size_t, double, const double*, double*);
  double (*max_abs)(std::size_t, const double*);
};

constexpr Table kScalar{Isa::Scalar, scalar::gemm_nt, scalar::dot, scalar::axpy, scalar::max_abs};
#ifdef HSYM_HAVE_AVX2_KERNELS
constexpr Table kAvx2{Isa::Avx2, avx2::gemm_nt, avx2::dot, avx2::axpy, avx2::max_abs};
#endif
#ifdef HSYM_HAVE_NEON_KERNELS
constexpr Table kNeon{Isa::Neon, neon::gemm_nt, neon::dot, neon::axpy, neon::max_abs};
#endif

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &kScalar;
    case Isa::Avx2:
#ifdef HSYM_HAVE_AVX2_KERNELS
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
#endif
      return nullptr;
    case Isa::Neon:
#ifdef HSYM_HAVE_NEON_KERNELS
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Table* initial_table() {
  const char* env = std::getenv("HSYM_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (const Table* t = table_for(isa)) return t;
  return &kScalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> t{initial_table()};
  return t;
}

}  // namespace

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c) {
  current().load(std::memory_order_relaxed)->gemm_nt(m, n, k, a, b, c);
}
double dot(std::size_t n, const double* x, const double* y) {
  return current().load(std::memory_order_relaxed)->dot(n, x, y);
}
void axpy(std::size_t n, double alpha, const double* x, double* y) {
  current().load(std::memory_order_relaxed)->axpy(n, alpha, x, y);
}
double max_abs(std::size_t n, const double* x) {
  return current().load(std::memory_order_relaxed)->max_abs(n, x);
}

Isa active_isa() { return current().load()->isa; }
bool isa_available(Isa isa) { return table_for(isa) != nullptr; }

bool select_isa(Isa isa) {
  const Table* t = table_for(isa);
  if (!t) return false;
  current().store(t);
  return true;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

}  // namespace hsym::kernels
