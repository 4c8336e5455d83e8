#include "cpvol/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cpvol::kern {

void axpy_scalar(double* dst, const double* src, double w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] += w * src[i];
}

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported() { return __builtin_cpu_supports("avx2"); }
#endif

namespace {

struct Resolved {
  AxpyFn fn;
  const char* name;
};

Resolved resolve() {
  const char* want = std::getenv("CPVOL_KERNEL");
  if (want != nullptr) {
    std::string w(want);
    if (w == "scalar") return {axpy_scalar, "scalar"};
#if defined(__x86_64__) || defined(_M_X64)
    if (w == "avx2" && avx2_supported()) return {axpy_avx2, "avx2"};
#endif
#if defined(__aarch64__)
    if (w == "neon") return {axpy_neon, "neon"};
#endif
    return {axpy_scalar, "scalar"};
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return {axpy_avx2, "avx2"};
#endif
#if defined(__aarch64__)
  return {axpy_neon, "neon"};
#endif
  return {axpy_scalar, "scalar"};
}

const Resolved& resolved() {
  static const Resolved r = resolve();
  return r;
}

}  // namespace

AxpyFn axpy() { return resolved().fn; }

const char* active_kernel_name() { return resolved().name; }

std::vector<std::string> available_kernel_names() {
  std::vector<std::string> out{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) out.emplace_back("avx2");
#endif
#if defined(__aarch64__)
  out.emplace_back("neon");
#endif
  return out;
}

AxpyFn kernel_by_name(const std::string& name) {
  if (name == "scalar") return axpy_scalar;
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2" && avx2_supported()) return axpy_avx2;
#endif
#if defined(__aarch64__)
  if (name == "neon") return axpy_neon;
#endif
  throw std::invalid_argument("unknown kernel variant: " + name);
}

}  // namespace cpvol::kern
