#include <benchmark/benchmark.h>

// Own main: the packaged benchmark_main archive carries LTO bytecode.
BENCHMARK_MAIN();
