#pragma once

// Run configuration, benchmark records, and the drivers behind the CLI
// subcommands. Everything here is callable from tests; the binary in tools/
// only parses flags and forwards.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "abslin/ilu.hpp"
#include "abslin/report.hpp"

namespace abslin {

enum class Algorithm : std::uint8_t { IluA, IluPivotCol, IluPivotRow, General };

std::string to_string(Algorithm algo);
std::string to_string(Mode mode);
std::string to_string(Outcome outcome);

struct RunConfig {
    Algorithm algo = Algorithm::IluPivotCol;
    std::string matrix_file;  // exclusive with generator
    std::string generator;    // "mf" | "mf2" | "rankdef"
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t rank = 0;     // rankdef generator only
    std::string rhs = "index";  // "index" or a file path
    Tolerances tol{};
    Mode mode = Mode::Compact;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: no files written
};

struct BenchRecord {
    std::string algorithm;
    std::string generator;  // "file" for matrix files
    std::string mode;
    std::size_t m = 0;
    std::size_t n = 0;
    double wall_s = 0.0;
    unsigned long long mult_count = 0;
    std::optional<double> residual;  // ||Ax - b||_2, Success only
    std::size_t rank = 0;
    std::string outcome;
    std::uint64_t seed = 0;
};

/// One record as a single JSON line.
std::string to_json_line(const BenchRecord& rec);

/// Load or generate the system, run the selected algorithm (timing the
/// solve only), optionally write solution/null-space/record files under
/// config.out_dir, and return the record. Prints "No Solution" to `diag`
/// when the system is incompatible.
BenchRecord run_solve(const RunConfig& config, std::ostream& diag);

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::vector<Algorithm> algos;
    std::vector<std::string> generators = {"mf", "mf2"};
    std::vector<Mode> modes = {Mode::Compact};
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

/// Cross product of sizes x algorithms x generators x modes. Cells may run
/// in parallel (jobs > 1); the returned order is always the deterministic
/// grid order.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config, std::ostream& diag);

/// Self-check suites: "structure" (projection-matrix invariants),
/// "oracle" (agreement with the reference solver), or "all".
/// Returns the number of failed properties.
int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out);

/// Process exit code for an outcome: 0 success, 2 incompatible,
/// 3 singular principal minor.
int exit_code(Outcome outcome);

/// True when the ABS_LOG environment variable requests verbose logging.
bool log_enabled();

}  // namespace abslin
