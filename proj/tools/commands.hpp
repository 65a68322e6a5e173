#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace toptree::cli {

inline constexpr int kExitFalse = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitResource = 70;

/// Bounds read from TOPTREE_MAX_NODES and TOPTREE_TRUNCATE_CAP.
struct Limits {
  std::size_t max_nodes;
  std::size_t truncate_cap;
};
Limits limits_from_env();

/// Runs every acceptance criterion, printing one line each; returns the
/// number of failures.
using Selftest = std::function<int(std::ostream&)>;

/// Entry point behind the executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Selftest& selftest = {});

}  // namespace toptree::cli
