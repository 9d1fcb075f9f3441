#include "adp/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "kernel_table.hpp"

namespace adp::simd {
namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Backend backend;
  const KernelTable* table;

  Dispatch() {
    backend = cpu_has_avx2() && detail::avx2_table() ? Backend::Avx2 : Backend::Scalar;
    if (const char* env = std::getenv("ADP_SIMD")) {
      if (std::strcmp(env, "scalar") == 0) backend = Backend::Scalar;
      if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2() && detail::avx2_table())
        backend = Backend::Avx2;
    }
    table = backend == Backend::Avx2 ? detail::avx2_table() : &detail::scalar_table();
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend best_backend() {
  return cpu_has_avx2() && detail::avx2_table() ? Backend::Avx2 : Backend::Scalar;
}

Backend active_backend() { return dispatch().backend; }

bool set_backend(Backend b) {
  if (b == Backend::Avx2) {
    if (!cpu_has_avx2() || !detail::avx2_table()) return false;
    dispatch().backend = b;
    dispatch().table = detail::avx2_table();
    return true;
  }
  dispatch().backend = Backend::Scalar;
  dispatch().table = &detail::scalar_table();
  return true;
}

const char* backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void matvec(const double* W, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols) {
  dispatch().table->matvec(W, x, bias, y, rows, cols);
}

void matvec_t_acc(const double* W, const double* dy, double* dx,
                  std::size_t rows, std::size_t cols) {
  dispatch().table->matvec_t_acc(W, dy, dx, rows, cols);
}

void ger_acc(const double* dy, const double* x, double* dW,
             std::size_t rows, std::size_t cols) {
  dispatch().table->ger_acc(dy, x, dW, rows, cols);
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().table->dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  dispatch().table->axpy(alpha, x, y, n);
}

void scale(double alpha, double* x, std::size_t n) {
  dispatch().table->scale(alpha, x, n);
}

double sum(const double* x, std::size_t n) { return dispatch().table->sum(x, n); }

double min_value(const double* x, std::size_t n) {
  return dispatch().table->min_value(x, n);
}

void relu(double* x, std::size_t n) { dispatch().table->relu(x, n); }

void relu_backward(const double* pre, double* grad, std::size_t n) {
  dispatch().table->relu_backward(pre, grad, n);
}

void clamp(double* x, std::size_t n, double lo, double hi) {
  dispatch().table->clamp(x, n, lo, hi);
}

void adam_step(double* p, const double* g, double* m, double* v, std::size_t n,
               double lr, double beta1, double beta2, double eps,
               double bias1, double bias2) {
  dispatch().table->adam_step(p, g, m, v, n, lr, beta1, beta2, eps, bias1, bias2);
}

}  // namespace adp::simd
