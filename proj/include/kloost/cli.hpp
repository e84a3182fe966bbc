#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <mpfr.h>

namespace kloost::cli {

enum class OutputFormat { Json, Csv, Text };

/// Resolved settings. Precedence: command-line flag, then --config file,
/// then $KLOOST_CACHE (cache path only), then built-in defaults.
struct Config {
  mpfr_prec_t precision_bits = 0;  // 0 = auto
  std::filesystem::path cache_path;
  unsigned threads = 1;
  OutputFormat output_format = OutputFormat::Json;
};

/// Parses a key=value config file (keys: precision, cache_path, threads,
/// output_format; '#' starts a comment). Throws std::invalid_argument.
Config load_config(const std::filesystem::path& path, Config base);

constexpr int kExitOk = 0;
constexpr int kExitIndeterminate = 1;
constexpr int kExitUsage = 2;

/// Entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kloost::cli
