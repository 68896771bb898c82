#include <benchmark/benchmark.h>

#include "momentflow/ensembles.hpp"
#include "momentflow/moments.hpp"
#include "momentflow/oracle.hpp"
#include "momentflow/propagation.hpp"
#include "momentflow/qmc.hpp"
#include "momentflow/special_functions.hpp"

namespace mf = momentflow;

namespace {

void BM_BvnCdfDelta(benchmark::State& state) {
  double rho = 0.1;
  for (auto _ : state) {
    rho = rho < 0.9 ? rho + 1e-6 : 0.1;
    benchmark::DoNotOptimize(mf::bvn_cdf_delta(0.7, -0.3, rho));
  }
}
BENCHMARK(BM_BvnCdfDelta);

void BM_OwensT(benchmark::State& state) {
  double h = 0.0;
  for (auto _ : state) {
    h = h < 3.0 ? h + 1e-6 : 0.0;
    benchmark::DoNotOptimize(mf::owens_t(h, 0.7));
  }
}
BENCHMARK(BM_OwensT);

void BM_NormQuantile(benchmark::State& state) {
  double p = 0.01;
  for (auto _ : state) {
    p = p < 0.99 ? p + 1e-7 : 0.01;
    benchmark::DoNotOptimize(mf::norm_quantile(p));
  }
}
BENCHMARK(BM_NormQuantile);

void BM_ActivationCov(benchmark::State& state) {
  const auto kind = static_cast<mf::Activation>(state.range(0));
  double n12 = 0.0;
  for (auto _ : state) {
    n12 = n12 < 0.9 ? n12 + 1e-6 : 0.0;
    benchmark::DoNotOptimize(
        mf::activation_cov(kind, {0.3, -0.5, 1.2, 0.8, n12}));
  }
}
BENCHMARK(BM_ActivationCov)->DenseRange(0, 4);

void BM_LayerMomentMatch(benchmark::State& state) {
  const Eigen::Index width = state.range(0);
  mf::EnsembleSpec spec;
  spec.activation = mf::Activation::Probit;
  spec.seed = 7;
  const mf::Network net = mf::build_network(spec);
  // Middle layer of the wide ensemble at the requested width.
  mf::LayerParams layer = net.layers()[1];
  layer.a = layer.a.topLeftCorner(width, width).eval();
  layer.b = layer.b.head(width).eval();
  layer.c = Eigen::MatrixXd::Zero(width, width);
  layer.d = Eigen::VectorXd::Zero(width);
  const mf::Gaussian g(Eigen::VectorXd::Zero(width),
                       Eigen::MatrixXd::Identity(width, width));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mf::layer_moment_match(g, layer));
  }
}
BENCHMARK(BM_LayerMomentMatch)->Arg(32)->Arg(100)->Arg(400)
    ->Unit(benchmark::kMillisecond);

void BM_SobolGenerate(benchmark::State& state) {
  for (auto _ : state) {
    mf::ScrambledSobol sobol(8, 42, 0);
    benchmark::DoNotOptimize(sobol.generate(state.range(0)));
  }
}
BENCHMARK(BM_SobolGenerate)->Arg(1 << 12)->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);

void BM_QmcSampleNetwork(benchmark::State& state) {
  mf::EnsembleSpec spec;
  spec.architecture = mf::Architecture::Deep;
  spec.activation = mf::Activation::Sine;
  spec.seed = 3;
  const mf::Network net = mf::build_network(spec);
  const mf::Gaussian input = mf::input_gaussian(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mf::qmc_sample_network(net, input, state.range(0), 42, 0));
  }
}
BENCHMARK(BM_QmcSampleNetwork)->Arg(1 << 12)->Arg(1 << 14)
    ->Unit(benchmark::kMillisecond);

}  // namespace
