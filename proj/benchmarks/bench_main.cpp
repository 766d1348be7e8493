#include <benchmark/benchmark.h>

#include "ktq/csc.hpp"

using namespace ktq;

namespace {

// Deterministic pseudo-random rational matrix; Lehmer sequence keeps the
// entries reproducible across runs.
QMatrix scrambled_matrix(long rows, long cols) {
    QMatrix m(rows, cols);
    long seed = 1;
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            seed = (seed * 48271) % 2147483647;
            m.at(i, j) = Rational(seed % 19 - 9, 1 + (seed % 7));
        }
    return m;
}

void BM_KernelElimination(benchmark::State& state) {
    QMatrix m = scrambled_matrix(state.range(0), 2 * state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(kernel(m).vectors.size());
}
BENCHMARK(BM_KernelElimination)->Arg(8)->Arg(16)->Arg(32);

void BM_CyclotomicMul(benchmark::State& state) {
    long n = state.range(0);
    Cyclotomic a =
        Cyclotomic::root_of_unity(n, 1) + Cyclotomic::root_of_unity(n, 3) * Rational(2, 3);
    Cyclotomic b = Cyclotomic::root_of_unity(n, 2) * Rational(5, 7) + Cyclotomic(Rational(1));
    for (auto _ : state) {
        Cyclotomic c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_CyclotomicMul)->Arg(8)->Arg(12)->Arg(24)->Arg(60);

void BM_DihedralCircleSolve(benchmark::State& state) {
    Group g = GroupTable::dihedral(8);
    SpacePart circle;
    circle.kind = SpacePart::Kind::Circle;
    SpaceSpec space = validate_space(g, {circle});
    TwistSpec twist = make_twist(space, trivial_cocycle(g), {});
    for (auto _ : state) benchmark::DoNotOptimize(solve_degree(space, twist, 0).dim);
}
BENCHMARK(BM_DihedralCircleSolve);

void BM_PointSolveTwisted(benchmark::State& state) {
    Group g = GroupTable::klein();
    SpacePart pt;
    pt.npoints = 1;
    pt.action.assign(4, {0});
    SpaceSpec space = validate_space(g, {pt});
    TwistSpec twist = make_twist(
        space, make_cocycle2(g, 2, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1}), {});
    for (auto _ : state) benchmark::DoNotOptimize(solve_degree(space, twist, 0).dim);
}
BENCHMARK(BM_PointSolveTwisted);

}  // namespace

BENCHMARK_MAIN();
