#include <benchmark/benchmark.h>

// Own main: the packaged benchmark_main archive is built with a different LTO
// version than the system compiler.
BENCHMARK_MAIN();
