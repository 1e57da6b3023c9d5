#include "eagle/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace eagle::kernels {

namespace {

constexpr KernelTable kScalarTable = {
    scalar::vadd,   scalar::vsub,      scalar::vmul,       scalar::vscale,
    scalar::vaxpy,  scalar::vdot,      scalar::vsum,       scalar::vmax,
    scalar::vexp,   scalar::vsigmoid,  scalar::vgelu,      scalar::vgelu_deriv,
    scalar::matmul, scalar::matmul_acc, scalar::matmul_tn_acc, scalar::matmul_nt_acc,
};

#ifdef EAGLE_BUILD_AVX2
constexpr KernelTable kAvx2Table = {
    avx2::vadd,   avx2::vsub,      avx2::vmul,       avx2::vscale,
    avx2::vaxpy,  avx2::vdot,      avx2::vsum,       avx2::vmax,
    avx2::vexp,   avx2::vsigmoid,  avx2::vgelu,      avx2::vgelu_deriv,
    avx2::matmul, avx2::matmul_acc, avx2::matmul_tn_acc, avx2::matmul_nt_acc,
};
#endif

bool cpu_has_avx2() {
#if defined(EAGLE_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend;
  const KernelTable* tab;
  Dispatch() {
    backend = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("EAGLE_KERNELS")) {
      std::string v(env);
      if (v == "scalar") backend = Backend::scalar;
      else if (v == "avx2") {
        if (!cpu_has_avx2()) throw std::runtime_error("EAGLE_KERNELS=avx2 but CPU/build lacks AVX2");
        backend = Backend::avx2;
      } else if (!v.empty() && v != "auto") {
        throw std::runtime_error("EAGLE_KERNELS must be scalar, avx2 or auto (got '" + v + "')");
      }
    }
    set(backend);
  }
  void set(Backend b) {
    backend = b;
#ifdef EAGLE_BUILD_AVX2
    tab = (b == Backend::avx2) ? &kAvx2Table : &kScalarTable;
#else
    tab = &kScalarTable;
#endif
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name() { return dispatch().backend == Backend::avx2 ? "avx2" : "scalar"; }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2())
    throw std::runtime_error("force_backend(avx2): CPU/build lacks AVX2");
  dispatch().set(b);
}

const KernelTable& table() { return *dispatch().tab; }

}  // namespace eagle::kernels
