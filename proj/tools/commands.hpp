#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "gcw/aeven.hpp"
#include "gcw/complex.hpp"

namespace gcw::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kResourceCap = 2, kBadArguments = 3 };

struct RunConfig {
    std::filesystem::path cache_dir; // empty disables caching
    bool connected_only = false;
    std::size_t generator_cap = kDefaultGeneratorCap;
    unsigned thread_count = 1;

    ComplexOptions complex_options() const;
};

// Reads GCW_CACHE_DIR and GCW_THREADS ("auto" or a positive integer).
RunConfig config_from_environment();
unsigned parse_thread_count(const std::string& value);

int cmd_enum(const RunConfig& cfg, int p, int q, bool decorated, std::ostream& out);
int cmd_homology(const RunConfig& cfg, int n, int m_min, int m_max, bool decorated, std::ostream& out);
int cmd_aeven(const RunConfig& cfg, int k, AevenMethod method, int max_k, std::ostream& out);
// suite: d2 | chainmap | counts | strata. Returns kOk on PASS, kInternal on FAIL.
int cmd_check(const RunConfig& cfg, const std::string& suite, int max_n, std::ostream& out);
// op: faces | poset | codim2 | schedule
int cmd_strata(int n, const std::string& op, int max_size, std::ostream& out);

// Parses argv and dispatches; maps exceptions to exit codes, diagnostics to err.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace gcw::cli
