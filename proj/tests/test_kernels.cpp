#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "cpvol/kernels.hpp"

using namespace cpvol;

TEST_CASE("axpy matches a hand-rolled loop") {
  std::vector<double> dst{1.0, 2.0, 3.0}, src{0.5, -0.25, 4.0};
  kern::axpy_scalar(dst.data(), src.data(), 2.0, 3);
  CHECK(dst[0] == doctest::Approx(2.0));
  CHECK(dst[1] == doctest::Approx(1.5));
  CHECK(dst[2] == doctest::Approx(11.0));
}

TEST_CASE("every runnable variant is bit-identical to the scalar kernel") {
  std::mt19937_64 rng(7);
  auto rnd = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 3.0 - 1.5;
  };
  for (const auto& name : kern::available_kernel_names()) {
    auto fn = kern::kernel_by_name(name);
    for (size_t len : {0UL, 1UL, 3UL, 4UL, 7UL, 8UL, 31UL, 64UL, 67UL, 513UL}) {
      for (size_t offset : {0UL, 1UL, 3UL}) {
        std::vector<double> src(len + offset), base(len + offset), variant;
        for (auto& x : src) x = rnd();
        for (auto& x : base) x = rnd();
        variant = base;
        const double w = rnd();
        kern::axpy_scalar(base.data() + offset, src.data() + offset, w, len);
        fn(variant.data() + offset, src.data() + offset, w, len);
        REQUIRE(std::memcmp(base.data(), variant.data(), base.size() * sizeof(double)) == 0);
      }
    }
  }
}

TEST_CASE("dispatch resolves to a runnable variant") {
  const std::string active = kern::active_kernel_name();
  bool found = false;
  for (const auto& name : kern::available_kernel_names()) found = found || name == active;
  CHECK(found);
  CHECK(kern::axpy() != nullptr);
}
