#pragma once

#include <cstddef>

// Data-parallel inner loops used by the network math and the planner
// reductions. Every kernel has a scalar reference implementation and an
// AVX2 variant; the active backend is chosen once at startup from CPUID
// and can be overridden (ADP_SIMD=scalar|avx2 or set_backend) for
// equivalence testing. Reductions accumulate in a fixed order per
// backend, so results are deterministic for a given backend.

namespace adp::simd {

enum class Backend { Scalar, Avx2 };

// Best backend this CPU supports.
Backend best_backend();

Backend active_backend();

// Returns false (and leaves the backend unchanged) if unsupported on this CPU.
bool set_backend(Backend b);

const char* backend_name(Backend b);

// y = W x + bias, W row-major (rows x cols). bias may be null.
void matvec(const double* W, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols);

// dx += W^T dy
void matvec_t_acc(const double* W, const double* dy, double* dx,
                  std::size_t rows, std::size_t cols);

// dW += dy x^T  (rank-one accumulate, dW row-major rows x cols)
void ger_acc(const double* dy, const double* x, double* dW,
             std::size_t rows, std::size_t cols);

double dot(const double* a, const double* b, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

void scale(double alpha, double* x, std::size_t n);

double sum(const double* x, std::size_t n);

double min_value(const double* x, std::size_t n);

// x = max(x, 0)
void relu(double* x, std::size_t n);

// grad *= (pre > 0)
void relu_backward(const double* pre, double* grad, std::size_t n);

void clamp(double* x, std::size_t n, double lo, double hi);

// One Adam step over a parameter block. bias1 = 1 - beta1^t, bias2 = 1 - beta2^t.
void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               double lr, double beta1, double beta2, double eps,
               double bias1, double bias2);

}  // namespace adp::simd
