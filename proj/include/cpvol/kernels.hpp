#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cpvol::kern {

// dst[i] += w * src[i] for i in [0, len).
//
// All variants perform the same rounded multiply-then-add per element (no
// FMA contraction), so every implementation produces bit-identical output;
// the dispatch is purely a throughput choice. Table accumulation order in
// the DP engines therefore does not depend on the selected ISA.
using AxpyFn = void (*)(double* dst, const double* src, double w, std::size_t len);

void axpy_scalar(double* dst, const double* src, double w, std::size_t len);

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
void axpy_avx2(double* dst, const double* src, double w, std::size_t len);
#endif

#if defined(__aarch64__)
void axpy_neon(double* dst, const double* src, double w, std::size_t len);
#endif

// Best variant for this machine, honoring the CPVOL_KERNEL environment
// variable ("scalar", "avx2", "neon") when set. Resolved once.
AxpyFn axpy();
const char* active_kernel_name();

// Names of every variant runnable on this machine (for equivalence tests).
std::vector<std::string> available_kernel_names();
AxpyFn kernel_by_name(const std::string& name);

}  // namespace cpvol::kern
