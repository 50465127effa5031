#pragma once

#include <optional>

#include "torsornet/gallery.hpp"
#include "torsornet/specfile.hpp"

namespace torsornet {

/// Exit codes: 0 success, 1 gallery mismatch, 2 input error, 3 undecided when
/// a decision was required.
struct CommandResult {
    int exit_code = 0;
    std::string human;
    nlohmann::json machine;
};

struct CommandOptions {
    std::string basepoint;            // analyze: holonomy basepoint, default first vertex
    std::string only;                 // gallery: run a single entry
    std::size_t max_search = 1000000; // cap on brute-force state spaces
};

CommandResult cmd_analyze(const std::string& spec_path, const CommandOptions& opt = {});
CommandResult cmd_compare(const std::string& spec_path_a, const std::string& spec_path_b,
                          const std::optional<std::string>& morphism_path,
                          const CommandOptions& opt = {});
CommandResult cmd_cohomology(const std::string& spec_path, const CommandOptions& opt = {});
CommandResult cmd_classify_tree(const std::string& spec_path, const CommandOptions& opt = {});
CommandResult cmd_gallery(const CommandOptions& opt = {});

}  // namespace torsornet
