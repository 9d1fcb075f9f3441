#pragma once

#include <cstddef>

namespace adp::simd::detail {

struct KernelTable {
  void (*matvec)(const double*, const double*, const double*, double*, std::size_t, std::size_t);
  void (*matvec_t_acc)(const double*, const double*, double*, std::size_t, std::size_t);
  void (*ger_acc)(const double*, const double*, double*, std::size_t, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*min_value)(const double*, std::size_t);
  void (*relu)(double*, std::size_t);
  void (*relu_backward)(const double*, double*, std::size_t);
  void (*clamp)(double*, std::size_t, double, double);
  void (*adam_step)(double*, const double*, double*, double*, std::size_t,
                    double, double, double, double, double, double);
};

const KernelTable& scalar_table();

// Null when the binary was built without AVX2 support.
const KernelTable* avx2_table();

}  // namespace adp::simd::detail
