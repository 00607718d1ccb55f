#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stpor/export.hpp"
#include "stpor/system.hpp"

namespace stpor::cli {

enum ExitCode : int { kOk = 0, kFail = 1, kInputError = 2, kLimit = 3 };

/// Bad user input that is not a model syntax error (unknown model, bad flag value).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A readable file path, else a generator shorthand such as dp10 or ml-4-10-2-7.
System resolve_model(const std::string& arg);

/// decl, alpha, process, random (shuffled by seed) or a file listing every action.
std::vector<ActionId> resolve_order(const System& sys, const std::string& spec, std::uint64_t seed);

/// Model ids the matrix expands to, in emission order, paired with their presets.
struct BenchCell {
    std::string model;
    std::string preset;
};
struct BenchMatrix {
    std::vector<BenchCell> cells;
    double timeout_s = 0;
    std::size_t node_limit = 0;
    bool paths = false;
    std::string order = "decl";
    std::uint64_t seed = 0;
};
BenchMatrix parse_bench_matrix(const std::string& json_text);
/// Runs every cell; failures become rows with status "error".
std::string run_bench(const BenchMatrix& matrix, const CsvOptions& csv);

}  // namespace stpor::cli
