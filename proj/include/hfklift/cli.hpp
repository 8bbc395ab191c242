#pragma once

// Subcommands of the hfklift tool. Each returns the process exit code and
// writes to the given streams so tests can drive them directly.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "hfklift/batch.hpp"
#include "hfklift/spliff.hpp"

namespace hfklift::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int fails = 1;  // verify: violations; spliff: a side fails; lift: no lift
inline constexpr int unreadable = 2;
inline constexpr int unknown = 3;  // spliff: Unknown; lift: kernel cap exceeded
}  // namespace exit_code

enum class Format { Text, Csv, Json };

int cmd_verify(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

struct LiftOptions {
  bool all_lifts = false;
  std::size_t max_kernel_dim = kDefaultMaxKernelDim;
  std::optional<std::filesystem::path> out_dir;  // default: next to the input
};
int cmd_lift(const std::filesystem::path& path, const LiftOptions& options, std::ostream& out, std::ostream& err);

struct AkCliOptions {
  std::optional<int> k;  // default: every k in [0, g]
  bool mirror = false;
  std::size_t lift_index = 0;
  std::size_t max_kernel_dim = kDefaultMaxKernelDim;
  std::optional<int> fallback_N;
};
int cmd_ak(const std::filesystem::path& path, const AkCliOptions& options, std::ostream& out, std::ostream& err);

int cmd_spliff(const std::filesystem::path& path, const DecideOptions& options, Format format, std::ostream& out,
               std::ostream& err);

int cmd_batch(const std::filesystem::path& manifest_or_dir, const BatchOptions& options, Format format,
              const std::optional<std::filesystem::path>& out_dir, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, char** argv);

}  // namespace hfklift::cli
