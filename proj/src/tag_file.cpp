#include "qtag/tag_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qtag/constructions.hpp"
#include "qtag/error.hpp"
#include "qtag/search.hpp"

namespace qtag {

namespace {

using nlohmann::json;

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::MalformedFile, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::MalformedFile, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return required<T>(j, key);
}

std::string mismatch(const char* what, int stored, int actual) {
  return std::string(what) + " is recorded as " + std::to_string(stored) + " but recomputes to " +
         std::to_string(actual);
}

}  // namespace

TagFileRecord make_record(const QuantumTag& tag, std::string family, std::optional<int> mu,
                          std::optional<int> delta, std::string notes) {
  TagFileRecord r;
  r.v = tag.v;
  r.k = tag.k;
  r.support = tag.support;
  r.family = std::move(family);
  r.rho = tag.rho;
  r.mu = mu;
  r.delta = delta;
  r.notes = std::move(notes);
  return r;
}

std::string to_json_line(const TagFileRecord& record) {
  json j;
  j["schema_version"] = record.schema_version;
  j["v"] = record.v;
  j["k"] = record.k;
  j["support"] = record.support;
  j["family"] = record.family;
  j["rho"] = record.rho;
  if (record.mu) j["mu"] = *record.mu;
  if (record.delta) j["delta"] = *record.delta;
  j["notes"] = record.notes;
  return j.dump();
}

TagFileRecord parse_record(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("not a JSON object: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::MalformedFile, "record is not a JSON object");
  TagFileRecord r;
  r.schema_version = required<int>(j, "schema_version");
  if (r.schema_version != kTagFileSchemaVersion) {
    throw Error(ErrorCode::MalformedFile, "unsupported schema_version " + std::to_string(r.schema_version));
  }
  r.v = required<int>(j, "v");
  r.k = required<int>(j, "k");
  r.support = required<Support>(j, "support");
  r.family = required<std::string>(j, "family");
  r.rho = required<int>(j, "rho");
  r.mu = optional_field<int>(j, "mu");
  r.delta = optional_field<int>(j, "delta");
  r.notes = optional_field<std::string>(j, "notes").value_or("");
  return r;
}

std::vector<TagFileRecord> read_tag_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedFile, "cannot open " + path.string());
  std::vector<TagFileRecord> records;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(parse_record(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedFile,
                  path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  if (records.empty()) throw Error(ErrorCode::MalformedFile, path.string() + " holds no records");
  return records;
}

void write_tag_file(const std::filesystem::path& path, const std::vector<TagFileRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

int header_delta_bound(const Support& support, int v) {
  return static_cast<int>(support.size()) - max_aperiodic_sidelobe(support, v);
}

QuantumTag verify_record(const TagFileRecord& record) {
  QuantumTag tag;
  try {
    tag = QuantumTag::from_support(record.support, record.v);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("bad support: ") + e.what());
  }
  if (tag.support != record.support) {
    throw Error(ErrorCode::MalformedFile, "support must be sorted and duplicate-free");
  }
  if (tag.k != record.k) throw Error(ErrorCode::VerificationMismatch, mismatch("k", record.k, tag.k));
  if (tag.rho != record.rho) {
    throw Error(ErrorCode::VerificationMismatch, mismatch("rho", record.rho, tag.rho));
  }
  if (record.mu) {
    const auto mu = verify_difference_set(tag.support, tag.v);
    if (!mu) {
      throw Error(ErrorCode::VerificationMismatch,
                  "mu is recorded as " + std::to_string(*record.mu) + " but the support is not a difference set");
    }
    if (*mu != *record.mu) throw Error(ErrorCode::VerificationMismatch, mismatch("mu", *record.mu, *mu));
  }
  if (record.delta) {
    const int bound = header_delta_bound(tag.support, tag.v);
    if (*record.delta < 1 || *record.delta > bound) {
      throw Error(ErrorCode::VerificationMismatch,
                  "delta " + std::to_string(*record.delta) + " exceeds what the support guarantees (" +
                      std::to_string(bound) + ")");
    }
  }
  return tag;
}

}  // namespace qtag
