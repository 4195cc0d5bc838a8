#pragma once

// Synthetic benchmark manifests written to a scratch directory.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "geocheck/harness/harness.hpp"

namespace benchgen {

namespace fs = std::filesystem;

inline fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("geocheck_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

inline void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

/// Section sizes of the full benchmark.
inline const std::vector<std::pair<std::string, std::size_t>>& full_sections() {
  static const std::vector<std::pair<std::string, std::size_t>> s{{"UG", 10}, {"LB", 10}, {"SP", 20},
                                                                  {"HSC", 20}, {"OP", 19}, {"IMO", 43}};
  return s;
}

inline std::string problem_id(const std::string& section, std::size_t i) {
  std::string lower;
  for (char c : section) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower + "_" + std::to_string(i);
}

/// Every synthetic problem states the same trivial fact under its own name.
inline std::string problem_statement(const std::string& id) {
  return "theorem " + id + " : ∀ (A B : Point), A ≠ B → B ≠ A\n";
}

/// Writes the 122-problem manifest and its statement files under `dir`.
inline fs::path write_full_manifest(const fs::path& dir) {
  std::string json = "{\"schema\": 1, \"problems\": [\n";
  bool first = true;
  for (const auto& [sec, n] : full_sections()) {
    for (std::size_t i = 0; i < n; ++i) {
      auto id = problem_id(sec, i);
      write(dir / "problems" / (id + ".geo"), problem_statement(id));
      json += std::string(first ? "" : ",\n") + "  {\"id\": \"" + id + "\", \"section\": \"" + sec +
              "\", \"statement\": \"problems/" + id + ".geo\"}";
      first = false;
    }
  }
  json += "\n]}\n";
  write(dir / "bench.json", json);
  return dir / "bench.json";
}

}  // namespace benchgen
