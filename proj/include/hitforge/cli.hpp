#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hitforge::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kUsage = 2,
    kInvariant = 3,
};

/// One cell of the (QP_4)_n dimension table.
struct TableCell {
    std::uint64_t n = 0;
    std::uint64_t dim = 0;
    std::string row;  // the row's degree formula
    unsigned s = 0;
};

/// Every cell of the k = 4 dimension table with 0 < n <= max_n, sorted by n.
std::vector<TableCell> qp4_table(std::uint64_t max_n);

/// Runs the command line `argv` (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hitforge::cli
