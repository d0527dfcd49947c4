// Serial reference vs OpenMP kernels: row contraction and residual sweeps.
#include <chrono>
#include <cstdio>
#include <array>
#include <omp.h>
#include <random>

#include "holonomy/kernels.hpp"
#include "holonomy/rmatrix.hpp"

using namespace hol;

namespace {

template <class F>
double time_ms(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

}  // namespace

int main() {
    std::mt19937_64 rng(3);
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %12s %12s %10s %12s\n", "case", "serial ms", "omp ms", "speedup", "max |diff|");

    for (int strands : {4, 6, 8, 10}) {
        // One crossing in the middle of a row of identities, dim 2 per strand.
        std::vector<Matrix> ops;
        for (int k = 0; k < strands / 2 - 1; ++k) ops.push_back(Matrix::Identity(2, 2));
        ops.push_back(random_matrix(4, 4, rng));
        while (static_cast<int>(ops.size()) < strands - 1) ops.push_back(Matrix::Identity(2, 2));
        const Eigen::Index D = Eigen::Index(1) << strands;
        Matrix state = random_matrix(D, 16, rng);
        Matrix a, b;
        int reps = strands >= 10 ? 2 : 20;
        double ts = time_ms([&] { a = kernels::apply_row_serial(ops, state); }, reps);
        double tp = time_ms([&] { b = kernels::apply_row_parallel(ops, state); }, reps);
        char name[64];
        std::snprintf(name, sizeof name, "apply_row %d strands", strands);
        std::printf("%-34s %12.3f %12.3f %10.2f %12.3e\n", name, ts, tp, ts / tp, (a - b).cwiseAbs().maxCoeff());
    }

    auto G = make_group("sl2");
    auto S = make_system("gauged-qsl2", G);
    const SpaceLabel X = S->spaces().at(0);
    for (std::size_t n : {200, 2000}) {
        std::vector<std::array<Element, 3>> triples;
        for (std::size_t k = 0; k < n; ++k) triples.push_back({G->sample(rng), G->sample(rng), G->sample(rng)});
        auto f = [&](std::size_t k) {
            return check_hybe(*S, X, X, X, triples[k][0], triples[k][1], triples[k][2]).residual;
        };
        std::vector<double> a, b;
        double ts = time_ms([&] { a = kernels::sweep_serial(n, f); }, 1);
        double tp = time_ms([&] { b = kernels::sweep_parallel(n, f); }, 1);
        double diff = 0.0;
        for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
        char name[64];
        std::snprintf(name, sizeof name, "hybe sweep %zu triples", n);
        std::printf("%-34s %12.3f %12.3f %10.2f %12.3e\n", name, ts, tp, ts / tp, diff);
    }
    return 0;
}
