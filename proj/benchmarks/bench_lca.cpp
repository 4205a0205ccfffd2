#include <benchmark/benchmark.h>

#include "lca/annihilation.hpp"
#include "lca/catalog.hpp"
#include "lca/classifier.hpp"

namespace {

lca::Poly dense_poly(const lca::RingPtr& ring, int degree) {
  lca::Poly acc = lca::Poly::constant(ring, 1);
  lca::Poly base = lca::Poly::variable(ring, "D") + lca::Poly::variable(ring, "lambda") +
                   lca::Poly::variable(ring, "p").scaled(3);
  for (int d = 0; d < degree; ++d) acc *= base;
  return acc;
}

void BM_PolyMultiply(benchmark::State& state) {
  lca::AlgebraDef def = lca::make_algebra("Bp").def;
  lca::Poly a = dense_poly(def.ring, static_cast<int>(state.range(0)));
  lca::Poly b = dense_poly(def.ring, static_cast<int>(state.range(0)) / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply)->Arg(4)->Arg(8);

void BM_SymbolicJacobi(benchmark::State& state) {
  lca::AlgebraDef def = lca::make_algebra("B_abp").def;
  lca::BracketEngine engine(def);
  for (auto _ : state)
    benchmark::DoNotOptimize(engine.check_jacobi("L", "L", "W", lca::CheckMode::Symbolic));
}
BENCHMARK(BM_SymbolicJacobi);

void BM_EnumerateJacobi(benchmark::State& state) {
  lca::AlgebraDef def = lca::make_bn(2);
  lca::BracketEngine engine(def);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        engine.check_jacobi("L", "L", "W", lca::CheckMode::Enumerate, state.range(0)));
}
BENCHMARK(BM_EnumerateJacobi)->Arg(4)->Arg(8);

void BM_VerifyClosedForm(benchmark::State& state) {
  lca::AlgebraDef def = lca::make_algebra("B_abp").def;
  lca::Annihilation ann(def);
  for (auto _ : state)
    benchmark::DoNotOptimize(ann.verify_closed_form(state.range(0), state.range(0)));
}
BENCHMARK(BM_VerifyClosedForm)->Arg(2)->Arg(4);

void BM_BuildSystem(benchmark::State& state) {
  lca::AnsatzSpec spec;
  spec.p = lca::Rational(2);
  spec.alpha = lca::Rational(2);
  spec.beta = lca::Rational(0);
  spec.K = state.range(0);
  spec.D = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(lca::build_system(spec));
}
BENCHMARK(BM_BuildSystem)->Args({2, 4})->Args({4, 6});

void BM_Classify(benchmark::State& state) {
  lca::AnsatzSpec spec;
  spec.p = lca::Rational(2);
  spec.alpha = lca::Rational(2);
  spec.beta = lca::Rational(0);
  spec.K = state.range(0);
  spec.D = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(lca::classify(spec));
}
BENCHMARK(BM_Classify)->Args({2, 4})->Args({4, 6});

void BM_SolvableQuotient(benchmark::State& state) {
  lca::AlgebraDef def = lca::make_algebra("B_abp").def;
  lca::Annihilation ann(def);
  std::map<std::string, lca::Rational> binds = {{"p", lca::Rational(2)},
                                                {"alpha", lca::Rational(1)},
                                                {"beta", lca::Rational(3)}};
  for (auto _ : state) {
    lca::FinLieAlgebra q = ann.build_Q(state.range(0), state.range(0), binds);
    benchmark::DoNotOptimize(q.is_solvable());
  }
}
BENCHMARK(BM_SolvableQuotient)->Arg(2)->Arg(3);

}  // namespace
