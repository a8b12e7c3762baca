#pragma once

// Line-oriented tag files: one JSON object per tag. Loading a record
// recomputes its metrics, so a file can never claim more than its support
// delivers.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtag/tags.hpp"

namespace qtag {

inline constexpr int kTagFileSchemaVersion = 1;

struct TagFileRecord {
  int schema_version = kTagFileSchemaVersion;
  int v = 0;
  int k = 0;
  Support support;
  /// Construction family: a difference-set family name, "ooc", "search" or
  /// "external".
  std::string family;
  int rho = 0;
  std::optional<int> mu;
  /// Header dissimilarity guarantee.
  std::optional<int> delta;
  std::string notes;

  friend bool operator==(const TagFileRecord&, const TagFileRecord&) = default;
};

TagFileRecord make_record(const QuantumTag& tag, std::string family, std::optional<int> mu = {},
                          std::optional<int> delta = {}, std::string notes = {});

std::string to_json_line(const TagFileRecord& record);
/// Throws MalformedFile on syntax or schema problems.
TagFileRecord parse_record(std::string_view line);

/// Blank lines are skipped. Records are parsed but not verified.
std::vector<TagFileRecord> read_tag_file(const std::filesystem::path& path);
void write_tag_file(const std::filesystem::path& path, const std::vector<TagFileRecord>& records);

/// Recomputes k and rho (and mu, and the header dissimilarity bound when
/// delta is present); throws VerificationMismatch on any disagreement.
QuantumTag verify_record(const TagFileRecord& record);

/// Largest delta a header with this support can honour: k minus its largest
/// off-peak aperiodic autocorrelation.
int header_delta_bound(const Support& support, int v);

}  // namespace qtag
