#pragma once

#include <functional>

#include "torsornet/paradox.hpp"

namespace torsornet {

/// A named worked example: observe() recomputes the analysis from scratch and
/// run_gallery compares the observations against the expected records.
struct GalleryEntry {
    std::string name;
    std::string summary;
    std::function<std::vector<std::pair<std::string, std::string>>()> observe;
    std::vector<std::pair<std::string, std::string>> expected;
};

struct GalleryCheck {
    std::string key;
    std::string expected;
    std::string actual;  // empty when the observation is missing
    bool pass = false;
};

struct GalleryEntryReport {
    std::string name;
    std::string summary;
    std::vector<GalleryCheck> checks;
    std::string error;  // non-empty when observe() threw
    bool pass = false;
};

struct GalleryReport {
    std::vector<GalleryEntryReport> entries;
    bool all_pass = true;
};

std::vector<GalleryEntry> builtin_gallery();
GalleryReport run_gallery(const std::vector<GalleryEntry>& entries);

}  // namespace torsornet
