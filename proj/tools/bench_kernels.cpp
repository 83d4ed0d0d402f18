// kerrbat-bench — compares the structured generator kernel (serial and
// OpenMP) against the dense-algebra reference across problem sizes, and
// times the integrator's stage-combination kernel.

#include "kerrbat/kernels.hpp"
#include "kerrbat/model.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace kerrbat;
using Clock = std::chrono::high_resolution_clock;

Matrix random_density(int d, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    Matrix m(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            m(i, j) = Complex{dist(gen), dist(gen)};
        }
    }
    Matrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return rho;
}

template <class F>
double time_ms(F&& body, int min_reps = 3, double min_total_ms = 80.0) {
    // warm-up
    body();
    int reps = 0;
    const auto t0 = Clock::now();
    double elapsed = 0.0;
    do {
        body();
        ++reps;
        elapsed = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    } while (reps < min_reps || elapsed < min_total_ms);
    return elapsed / reps;
}

} // namespace

int main() {
    ModelParams params;
    params.delta = 0.2;
    params.g = 0.2;
    params.drive = 0.5;
    params.kerr = 0.05;
    params.gamma = 0.3;

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n\n");
#endif

    std::printf("%-10s %-6s %14s %14s %14s %10s %12s\n", "spec", "dim", "dense[ms]",
                "struct-s[ms]", "struct-p[ms]", "speedup", "max|diff|");

    const int dims[][2] = {{5, 5}, {10, 10}, {15, 15}, {20, 20}, {25, 25}};
    for (const auto& dd : dims) {
        const HilbertSpec spec(dd[0], dd[1]);
        const int d = spec.joint_dim();
        const kernels::LindbladAction action(params, spec);
        const Matrix rho = random_density(d, 42);
        Matrix out_serial(d, d), out_parallel(d, d);

        const double ms_dense =
            time_ms([&] { volatile auto r = lindblad_rhs(params, spec, rho).sum(); (void)r; });
        const double ms_serial =
            time_ms([&] { action.apply(rho, out_serial, kernels::Exec::serial); });
        const double ms_parallel =
            time_ms([&] { action.apply(rho, out_parallel, kernels::Exec::parallel); });

        const Matrix reference = lindblad_rhs(params, spec, rho);
        const double diff =
            std::max((out_serial - reference).cwiseAbs().maxCoeff(),
                     (out_parallel - out_serial).cwiseAbs().maxCoeff());

        std::printf("%2dx%-7d %-6d %14.3f %14.3f %14.3f %9.2fx %12.3e\n", dd[0], dd[1], d,
                    ms_dense, ms_serial, ms_parallel, ms_serial / ms_parallel, diff);
    }

    std::printf("\nstage combination (7-term fused axpy on 625^2 states)\n");
    {
        const int d = 625;
        std::vector<Matrix> k(7);
        for (int i = 0; i < 7; ++i) {
            k[i] = random_density(d, 100 + static_cast<unsigned>(i));
        }
        Matrix out(d, d);
        const double coeffs[7] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
        const Matrix* terms[7] = {&k[0], &k[1], &k[2], &k[3], &k[4], &k[5], &k[6]};
        const double ms_s = time_ms([&] {
            kernels::linear_combination(out, k[0], coeffs, terms, kernels::Exec::serial);
        });
        const double ms_p = time_ms([&] {
            kernels::linear_combination(out, k[0], coeffs, terms, kernels::Exec::parallel);
        });
        std::printf("serial %7.3f ms   parallel %7.3f ms   speedup %5.2fx\n", ms_s, ms_p,
                    ms_s / ms_p);
    }
    return 0;
}
