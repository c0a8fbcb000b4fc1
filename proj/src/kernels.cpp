#include "abslin/kernels.hpp"

namespace abslin::kernels {

// Work below this many fused multiply-adds is not worth a parallel region.
static constexpr std::size_t kParallelThreshold = 16384;

namespace serial {

void project_tail(const double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* arow, double* s, WorkCounters& wc) {
    for (std::size_t j = stage; j < n; ++j) {
        const double* row = buf + j * ld;
        double acc = 0.0;
        for (std::size_t c = 0; c < stage; ++c) acc += row[c] * arow[c];
        s[j] = acc + arow[j];
    }
    wc.s_mults += static_cast<unsigned long long>(n - stage) * stage;
}

void update_block(double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* prow, const double* s, double d, WorkCounters& wc) {
    const std::size_t width = stage + 1;
    for (std::size_t j = stage + 1; j < n; ++j) {
        double* row = buf + j * ld;
        const double sj = s[j];
        for (std::size_t c = 0; c < width; ++c) row[c] -= (sj * prow[c]) / d;
    }
    double* pivot_row = buf + stage * ld;
    for (std::size_t c = 0; c < width; ++c) pivot_row[c] = 0.0;
    const unsigned long long block = static_cast<unsigned long long>(n - stage - 1) * width;
    wc.h_mults += block;
    wc.h_divs += block;
    wc.h_writes += block;
}

void pivot_row_values(const double* buf, std::size_t ld, std::size_t stage,
                      const DenseMatrix& a, std::size_t row_begin, std::size_t row_end,
                      double* vals) {
    const double* hrow = buf + stage * ld;
    for (std::size_t j = row_begin; j < row_end; ++j) {
        const double* arow = a.row_data(j);
        double acc = 0.0;
        for (std::size_t c = 0; c < stage; ++c) acc += hrow[c] * arow[c];
        vals[j - row_begin] = acc + arow[stage];
    }
}

}  // namespace serial

namespace par {

void project_tail(const double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* arow, double* s, WorkCounters& wc) {
    const std::size_t rows = n - stage;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (rows * stage > kParallelThreshold)
#endif
    for (std::size_t j = stage; j < n; ++j) {
        const double* row = buf + j * ld;
        double acc = 0.0;
        for (std::size_t c = 0; c < stage; ++c) acc += row[c] * arow[c];
        s[j] = acc + arow[j];
    }
    wc.s_mults += static_cast<unsigned long long>(rows) * stage;
}

void update_block(double* buf, std::size_t ld, std::size_t stage, std::size_t n,
                  const double* prow, const double* s, double d, WorkCounters& wc) {
    const std::size_t width = stage + 1;
    const std::size_t rows = n - stage - 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (rows * width > kParallelThreshold)
#endif
    for (std::size_t j = stage + 1; j < n; ++j) {
        double* row = buf + j * ld;
        const double sj = s[j];
        for (std::size_t c = 0; c < width; ++c) row[c] -= (sj * prow[c]) / d;
    }
    double* pivot_row = buf + stage * ld;
    for (std::size_t c = 0; c < width; ++c) pivot_row[c] = 0.0;
    const unsigned long long block = static_cast<unsigned long long>(rows) * width;
    wc.h_mults += block;
    wc.h_divs += block;
    wc.h_writes += block;
}

void pivot_row_values(const double* buf, std::size_t ld, std::size_t stage,
                      const DenseMatrix& a, std::size_t row_begin, std::size_t row_end,
                      double* vals) {
    [[maybe_unused]] const std::size_t rows = row_end - row_begin;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (rows * stage > kParallelThreshold)
#endif
    for (std::size_t j = row_begin; j < row_end; ++j) {
        const double* hrow = buf + stage * ld;
        const double* arow = a.row_data(j);
        double acc = 0.0;
        for (std::size_t c = 0; c < stage; ++c) acc += hrow[c] * arow[c];
        vals[j - row_begin] = acc + arow[stage];
    }
}

}  // namespace par

}  // namespace abslin::kernels
