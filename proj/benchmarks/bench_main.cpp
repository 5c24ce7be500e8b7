// Microbenchmarks for the hot paths: channel synthesis, the closed-form
// position solve, CRC, frame codec, and one full Monte Carlo trial.

#include <benchmark/benchmark.h>

#include "risloc/channel.hpp"
#include "risloc/localization.hpp"
#include "risloc/metrics.hpp"
#include "risloc/protocol.hpp"
#include "risloc/sensing.hpp"

using namespace risloc;

namespace {

void bm_rice_channel(benchmark::State& state) {
    const Scenario sc;
    const ArrayGeometry bs = sc.bs_array();
    const ArrayGeometry ris = sc.ris_array(0);
    SeededRng rng(42, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(rice_channel(bs, ris, sc.radio, rng));
}
BENCHMARK(bm_rice_channel);

void bm_closed_form_solve(benchmark::State& state) {
    const AnchorSet anchors = Scenario{}.anchors;
    const Position3D ue{25.0, 25.0, 1.5};
    const RangeTriple d = forward_ranges(anchors, ue);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_closed_form(anchors, d, ue.z));
}
BENCHMARK(bm_closed_form_solve);

void bm_crc8(benchmark::State& state) {
    const std::uint8_t msg[4] = {0xb1, 0x23, 0x45, 0x15};
    for (auto _ : state)
        benchmark::DoNotOptimize(crc8(std::span<const std::uint8_t>(msg)));
}
BENCHMARK(bm_crc8);

void bm_frame_codec(benchmark::State& state) {
    SensingFrame f;
    f.user_id = 0x2468a;
    f.timestamp = 0x15;
    for (auto _ : state) {
        const std::uint64_t bits = encode_sensing_frame(f);
        benchmark::DoNotOptimize(decode_sensing_frame(bits));
    }
}
BENCHMARK(bm_frame_codec);

void bm_monte_carlo_trial(benchmark::State& state) {
    const Scenario sc;
    std::uint64_t offset = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials(sc, 20.0, 1, sc.master_seed, offset++));
}
BENCHMARK(bm_monte_carlo_trial);

} // namespace

BENCHMARK_MAIN();
