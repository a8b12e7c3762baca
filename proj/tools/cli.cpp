#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtag/constructions.hpp"
#include "qtag/error.hpp"
#include "qtag/search.hpp"
#include "qtag/stream_sim.hpp"
#include "qtag/tag_file.hpp"

namespace qtag::cli {

namespace {

using nlohmann::json;

constexpr const char* kExitCodeHelp =
    "Exit status:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown subcommand, missing or bad flag)\n"
    "  3  malformed or unreadable input file\n"
    "  4  verification failed (stored metrics disagree with the support)\n"
    "  5  invalid parameters (not prime, inadmissible prime, gap too short, ...)\n"
    "  6  search infeasible or over its work limit\n"
    "Errors print as 'error: <Category>: <message>' on stderr.";

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedFile: return kMalformedFile;
    case ErrorCode::VerificationMismatch:
    case ErrorCode::NotADifferenceSet: return kVerificationFailed;
    case ErrorCode::Infeasible:
    case ErrorCode::CapExceeded: return kSearchLimit;
    default: return kInvalidParameters;
  }
}

// Writes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

json report_json(const char* kind, const SearchReport& r) {
  json j;
  j["search"] = kind;
  j["v"] = r.v;
  j["k"] = r.k;
  if (r.s) j["s"] = *r.s;
  j["objective"] = r.objective;
  j["witnesses"] = r.witnesses;
  j["witness_count"] = r.witness_count;
  j["candidates_examined"] = r.candidates_examined;
  j["exhaustive"] = r.exhaustive;
  j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  j["bound_met"] = r.bound_met;
  if (r.min_distance) j["min_distance"] = *r.min_distance;
  return j;
}

TagFileRecord ds_record(const DifferenceSetTag& ds, std::string notes) {
  return make_record(ds.tag, std::string(to_string(ds.certificate.family)), ds.certificate.mu,
                     ds.header_delta(), std::move(notes));
}

// ---- tag gen ---------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::uint64_t q = 0;
  unsigned m = 0;
  std::uint64_t p = 0;
  std::string residue = "quadratic";
  std::vector<int> support;
  int v = 0;
  std::optional<int> delta;
  std::string out;
};

TagFileRecord generate(const GenArgs& a) {
  const auto family = parse_ds_family(a.family);
  if (!family) throw Error(ErrorCode::InvalidArgument, "unknown family '" + a.family + "'");
  auto need = [&](bool present, const char* flags) {
    if (!present) throw Error(ErrorCode::InvalidArgument, a.family + " needs " + flags);
  };
  switch (*family) {
    case DsFamily::Singer:
      need(a.q > 0 && a.m > 0, "--q and --m");
      return ds_record(singer_difference_set(a.q, a.m),
                       "q=" + std::to_string(a.q) + " m=" + std::to_string(a.m));
    case DsFamily::Residue: {
      need(a.p > 0, "--p");
      const auto kind = parse_residue_family(a.residue);
      if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown residue family '" + a.residue + "'");
      return ds_record(residue_ds(a.p, *kind), a.residue + " p=" + std::to_string(a.p));
    }
    case DsFamily::Hall:
      need(a.p > 0, "--p");
      return ds_record(hall_ds(a.p), "p=" + std::to_string(a.p));
    case DsFamily::TwinPrime:
      need(a.p > 0, "--p");
      return ds_record(twin_prime_ds(a.p), "p=" + std::to_string(a.p));
    case DsFamily::Complement:
      need(!a.support.empty() && a.v > 0, "--support and --v");
      return ds_record(complement_ds(make_support(a.support, a.v), a.v), "complement");
    case DsFamily::External: {
      need(!a.support.empty() && a.v > 0, "--support and --v");
      const auto tag = QuantumTag::from_support(a.support, a.v);
      auto rec = make_record(tag, "external", verify_difference_set(tag.support, tag.v), a.delta);
      verify_record(rec);
      return rec;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

// ---- tag analyze / verify --------------------------------------------------

json analysis_json(const TagFileRecord& rec) {
  const QuantumTag tag = verify_record(rec);
  json j;
  j["v"] = tag.v;
  j["k"] = tag.k;
  j["support"] = tag.support;
  j["family"] = rec.family;
  j["rho"] = tag.rho;
  j["bound"] = comma_free_upper_bound(tag.v, tag.k);
  j["optimal"] = tag.optimal;
  const auto mu = verify_difference_set(tag.support, tag.v);
  j["mu"] = mu ? json(*mu) : json(nullptr);
  j["profile"] = autocorrelation_profile(tag.vector());
  j["header_delta_bound"] = header_delta_bound(tag.support, tag.v);
  j["record_verified"] = true;
  return j;
}

bool all_ooc(const std::vector<TagFileRecord>& records) {
  const auto n = std::count_if(records.begin(), records.end(),
                               [](const TagFileRecord& r) { return r.family == "ooc"; });
  if (n != 0 && n != static_cast<long>(records.size())) {
    throw Error(ErrorCode::MalformedFile, "a file mixes OOC codewords with other tags");
  }
  return n != 0;
}

std::vector<Support> supports_of(const std::vector<TagFileRecord>& records, int& v) {
  std::vector<Support> out;
  v = records.front().v;
  for (const auto& r : records) {
    if (r.v != v) throw Error(ErrorCode::MalformedFile, "codewords of different lengths");
    verify_record(r);
    out.push_back(r.support);
  }
  return out;
}

OrthogonalTagSet tagset_from(const std::vector<TagFileRecord>& records) {
  int v = 0;
  const auto supports = supports_of(records, v);
  return all_ooc(records) ? ooc_tag_set(supports, v) : OrthogonalTagSet::from_supports(supports, v);
}

void verify_file(const std::vector<TagFileRecord>& records, std::ostream& out) {
  if (all_ooc(records)) {
    int v = 0;
    const auto supports = supports_of(records, v);
    const OrthogonalTagSet set = ooc_tag_set(supports, v);
    json j;
    j["certificate"] = "ooc";
    j["v"] = set.v;
    j["k"] = set.k;
    j["size"] = set.size();
    j["lambda"] = 1;
    j["johnson_bound"] = johnson_bound(set.v, set.k);
    j["rho_c"] = set.rho_c;
    j["d"] = set.d;
    j["verified"] = true;
    out << j.dump() << '\n';
    return;
  }
  for (const auto& rec : records) {
    const QuantumTag tag = verify_record(rec);
    json j;
    j["certificate"] = rec.mu ? "difference_set" : "tag";
    j["v"] = tag.v;
    j["k"] = tag.k;
    j["rho"] = tag.rho;
    j["optimal"] = tag.optimal;
    if (rec.mu) j["mu"] = *rec.mu;
    if (rec.delta) j["delta"] = *rec.delta;
    j["verified"] = true;
    out << j.dump() << '\n';
  }
}

// ---- sim -------------------------------------------------------------------

struct SimArgs {
  std::uint64_t seed = 0;
  std::string out;
  std::size_t trials = 1;
  std::vector<double> p_erasure;
  std::vector<double> p_incursion;
  std::vector<std::string> adversarial;
  std::size_t window = 0;
  std::string tag_file;
  std::size_t frames = 3;
  std::vector<long> offsets{0};
  std::vector<int> digits;
  std::vector<std::size_t> payloads;
  std::size_t payload_len = 0;
  std::string header_mode = "general";
  std::optional<int> delta;
};

std::vector<sim::NoiseConfig> noise_grid(const SimArgs& a, std::size_t default_window) {
  std::vector<sim::NoiseConfig> grid;
  if (!a.adversarial.empty()) {
    if (!a.p_erasure.empty() || !a.p_incursion.empty()) {
      throw Error(ErrorCode::InvalidArgument, "--adversarial cannot be combined with probabilities");
    }
    for (const auto& item : a.adversarial) {
      sim::NoiseConfig cfg;
      cfg.mode = sim::NoiseMode::Adversarial;
      char colon = 0;
      std::istringstream in(item);
      if (!(in >> cfg.e_erasures >> colon >> cfg.e_incursions) || colon != ':' || !in.eof()) {
        throw Error(ErrorCode::InvalidArgument, "adversarial counts must look like E:I, got '" + item + "'");
      }
      cfg.window_length = a.window ? a.window : default_window;
      cfg.validate();
      grid.push_back(cfg);
    }
    return grid;
  }
  const std::vector<double> pe = a.p_erasure.empty() ? std::vector<double>{0.0} : a.p_erasure;
  const std::vector<double> pi = a.p_incursion.empty() ? std::vector<double>{0.0} : a.p_incursion;
  for (double e : pe) {
    for (double i : pi) {
      sim::NoiseConfig cfg;
      cfg.p_erasure = e;
      cfg.p_incursion = i;
      cfg.validate();
      grid.push_back(cfg);
    }
  }
  return grid;
}

std::vector<std::size_t> payload_lengths(const SimArgs& a) {
  if (!a.payloads.empty()) return a.payloads;
  if (a.payload_len == 0) throw Error(ErrorCode::InvalidArgument, "give --payloads or --payload-len");
  return std::vector<std::size_t>(a.frames, a.payload_len);
}

TagFileRecord first_record(const std::string& path) { return read_tag_file(path).front(); }

void run_sim(const std::string& kind, const SimArgs& a, std::ostream& out) {
  std::vector<sim::CampaignCell> cells;
  auto add_cells = [&](const std::string& family, const sim::FramedSequence& seq, const sim::Decoder& dec,
                       std::size_t default_window, bool use_offsets) {
    for (const auto& noise : noise_grid(a, default_window)) {
      sim::CampaignCell cell;
      cell.family = family;
      cell.seq = seq;
      cell.decoder = dec;
      cell.noise = noise;
      cell.trials = a.trials;
      if (use_offsets) cell.offsets = a.offsets;
      cells.push_back(std::move(cell));
    }
  };

  if (kind == "sync") {
    const auto rec = first_record(a.tag_file);
    const QuantumTag tag = verify_record(rec);
    add_cells(rec.family, sim::build_single_tag_sequence(tag, a.frames), sim::Decoder::nearest_shift(tag),
              static_cast<std::size_t>(tag.v), true);
  } else if (kind == "orthogonal") {
    const auto records = read_tag_file(a.tag_file);
    const OrthogonalTagSet set = tagset_from(records);
    std::vector<int> digits = a.digits;
    if (digits.empty()) {
      digits.resize(static_cast<std::size_t>(set.size()));
      std::iota(digits.begin(), digits.end(), 0);
    }
    add_cells(records.front().family, sim::build_orthogonal_sequence(set, digits),
              sim::Decoder::orthogonal(set), static_cast<std::size_t>(set.v), true);
  } else if (kind == "header") {
    const auto rec = first_record(a.tag_file);
    const QuantumTag tag = verify_record(rec);
    const auto delta = a.delta ? a.delta : rec.delta;
    if (!delta) throw Error(ErrorCode::InvalidArgument, "tag record has no delta; pass --delta");
    if (*delta > header_delta_bound(tag.support, tag.v)) {
      throw Error(ErrorCode::InvalidArgument, "--delta exceeds what this header guarantees");
    }
    HeaderMode mode;
    if (a.header_mode == "general") {
      mode = HeaderMode::General;
    } else if (a.header_mode == "erasure_only") {
      mode = HeaderMode::ErasureOnly;
    } else {
      throw Error(ErrorCode::InvalidArgument, "--mode must be general or erasure_only");
    }
    add_cells(rec.family, sim::build_header_sequence(tag, payload_lengths(a)),
              sim::Decoder::header(tag, mode, *delta), static_cast<std::size_t>(tag.v), false);
  } else {
    if (!a.adversarial.empty() && a.window == 0) {
      throw Error(ErrorCode::InvalidArgument, "adversarial naive runs need --window");
    }
    add_cells("naive", sim::build_naive_sequence(payload_lengths(a)), sim::Decoder::naive(), a.window, false);
  }
  out << sim::to_csv(sim::run_campaign(cells, a.seed));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-weight self-synchronizing tags: construct, analyze, search, simulate.", "qtag"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  // tag
  auto* tag = app.add_subcommand("tag", "Single tags");
  tag->require_subcommand(1);
  GenArgs gen;
  auto* tag_gen = tag->add_subcommand("gen", "Construct a difference-set tag and write a tag file");
  tag_gen->add_option("--family", gen.family, "singer|residue|hall|twin_prime|complement|external")->required();
  tag_gen->add_option("--q", gen.q, "Singer: prime power q");
  tag_gen->add_option("--m", gen.m, "Singer: projective dimension m");
  tag_gen->add_option("--p", gen.p, "residue/hall/twin_prime: the prime p");
  tag_gen->add_option("--residue", gen.residue, "quadratic|quartic|quartic_zero|octic|octic_zero")
      ->capture_default_str();
  tag_gen->add_option("--support", gen.support, "complement/external: support list")->delimiter(',');
  tag_gen->add_option("--v", gen.v, "complement/external: length");
  tag_gen->add_option("--delta", gen.delta, "external: header dissimilarity to record");
  tag_gen->add_option("--out", gen.out, "Output tag file (default stdout)");

  std::string analyze_file;
  std::string analyze_out;
  auto* tag_analyze = tag->add_subcommand("analyze", "Profile, rho, bound and optimality of each tag");
  tag_analyze->add_option("file", analyze_file, "Tag file")->required();
  tag_analyze->add_option("--out", analyze_out, "Output file (default stdout)");

  int search_v = 0;
  int search_k = 0;
  std::optional<int> ooc_target;
  int header_s = 1;
  int header_min_distance = 0;
  std::size_t max_witnesses = SearchLimits{}.max_witnesses;
  std::string search_out;
  std::string tags_out;
  auto add_search_flags = [&](CLI::App* sub) {
    sub->add_option("--v", search_v, "Length")->required();
    sub->add_option("--k", search_k, "Weight")->required();
    sub->add_option("--out", search_out, "Report file (default stdout)");
    sub->add_option("--tags-out", tags_out, "Also write the result as a tag file");
  };
  auto* tag_search = tag->add_subcommand("search", "Exhaustive search for the largest comma-free index");
  add_search_flags(tag_search);
  tag_search->add_option("--max-witnesses", max_witnesses, "Witnesses kept in the report")->capture_default_str();

  auto* ooc = app.add_subcommand("ooc", "Optical orthogonal codes");
  ooc->require_subcommand(1);
  auto* ooc_search = ooc->add_subcommand("search", "Backtracking search for a (v,k,1)-OOC");
  add_search_flags(ooc_search);
  ooc_search->add_option("--target", ooc_target, "Codeword count to reach (default: Johnson bound)");

  auto* header = app.add_subcommand("header", "Packet headers");
  header->require_subcommand(1);
  auto* header_search = header->add_subcommand("search", "Minimise aperiodic correlation of headers");
  add_search_flags(header_search);
  header_search->add_option("--s", header_s, "Number of headers")->capture_default_str();
  header_search->add_option("--min-distance", header_min_distance, "Pairwise distance (s > 1)");

  // sim
  auto* sim_cmd = app.add_subcommand("sim", "Synchronization campaigns (CSV output)");
  sim_cmd->require_subcommand(1);
  SimArgs sa;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", sa.seed, "Master seed (required)")->required();
    sub->add_option("--out", sa.out, "CSV file (default stdout)");
    sub->add_option("--trials", sa.trials, "Trials per cell (iid and sampled adversarial)")->capture_default_str();
    sub->add_option("--p-erasure", sa.p_erasure, "Erasure probabilities")->delimiter(',');
    sub->add_option("--p-incursion", sa.p_incursion, "Incursion probabilities")->delimiter(',');
    sub->add_option("--adversarial", sa.adversarial, "Exact error counts E:I per window")->delimiter(',');
    sub->add_option("--window", sa.window, "Adversarial block length for stream decoders");
  };
  auto* sim_sync = sim_cmd->add_subcommand("sync", "Nearest-shift decoding of single-tag frames");
  auto* sim_orth = sim_cmd->add_subcommand("orthogonal", "Locate-and-identify with a tag set");
  auto* sim_header = sim_cmd->add_subcommand("header", "Header location in variable-length frames");
  auto* sim_naive = sim_cmd->add_subcommand("naive", "Single-marker baseline");
  for (auto* sub : {sim_sync, sim_orth, sim_header, sim_naive}) add_common(sub);
  for (auto* sub : {sim_sync, sim_orth}) {
    sub->add_option("--frames", sa.frames, "Frames in the stream")->capture_default_str();
    sub->add_option("--offsets", sa.offsets, "Window misalignments")->delimiter(',')->capture_default_str();
  }
  sim_sync->add_option("--tag", sa.tag_file, "Tag file (first record is used)")->required();
  sim_orth->add_option("--code", sa.tag_file, "Tag file holding the tag set")->required();
  sim_orth->add_option("--digits", sa.digits, "Codeword index per frame (default 0..s-1)")->delimiter(',');
  sim_header->add_option("--tag", sa.tag_file, "Header tag file (first record is used)")->required();
  sim_header->add_option("--mode", sa.header_mode, "general|erasure_only")->capture_default_str();
  sim_header->add_option("--delta", sa.delta, "Dissimilarity (default: the record's delta)");
  for (auto* sub : {sim_header, sim_naive}) {
    sub->add_option("--payloads", sa.payloads, "Payload length per frame")->delimiter(',');
    sub->add_option("--frames", sa.frames, "Frame count with --payload-len")->capture_default_str();
    sub->add_option("--payload-len", sa.payload_len, "Uniform payload length");
  }

  std::string verify_file_path;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Re-verify a tag or OOC file and print certificates");
  verify->add_option("file", verify_file_path, "Tag file")->required();
  verify->add_option("--out", verify_out, "Output file (default stdout)");

  if (args.size() > 1 && !args[1].empty() && args[1].front() != '-' && !app.get_subcommand_no_throw(args[1])) {
    err << "error: Usage: unknown subcommand '" << args[1] << "'\n";
    return kUsage;
  }
  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: Usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (tag_gen->parsed()) {
      Sink sink(gen.out, out);
      *sink << to_json_line(generate(gen)) << '\n';
    } else if (tag_analyze->parsed()) {
      const auto records = read_tag_file(analyze_file);
      Sink sink(analyze_out, out);
      for (const auto& r : records) *sink << analysis_json(r).dump() << '\n';
    } else if (tag_search->parsed() || ooc_search->parsed() || header_search->parsed()) {
      SearchLimits limits;
      limits.max_witnesses = max_witnesses;
      SearchReport report;
      const char* kind = nullptr;
      std::vector<TagFileRecord> tags;
      if (tag_search->parsed()) {
        kind = "tag";
        report = search_optimal_tag(search_v, search_k, limits);
        for (const auto& w : report.witnesses) {
          tags.push_back(make_record(QuantumTag::from_support(w, search_v), "search"));
        }
      } else if (ooc_search->parsed()) {
        kind = "ooc";
        report = search_ooc(search_v, search_k, ooc_target, limits);
        for (const auto& w : report.witnesses) {
          tags.push_back(make_record(QuantumTag::from_support(w, search_v), "ooc"));
        }
      } else {
        kind = "header";
        report = header_s == 1 ? search_min_aperiodic_header(search_v, search_k, limits)
                               : search_header_set(search_v, search_k, header_s, header_min_distance, limits);
        const int delta = search_k - report.objective;
        for (const auto& w : report.witnesses) {
          tags.push_back(make_record(QuantumTag::from_support(w, search_v), "search",
                                     std::nullopt, delta >= 1 ? std::optional<int>(delta) : std::nullopt));
        }
      }
      Sink sink(search_out, out);
      *sink << report_json(kind, report).dump(2) << '\n';
      if (!tags_out.empty()) write_tag_file(tags_out, tags);
    } else if (verify->parsed()) {
      const auto records = read_tag_file(verify_file_path);
      std::ostringstream buffer;  // nothing is written unless every record passes
      verify_file(records, buffer);
      Sink sink(verify_out, out);
      *sink << buffer.str();
    } else {
      const std::string kind = sim_sync->parsed()     ? "sync"
                               : sim_orth->parsed()   ? "orthogonal"
                               : sim_header->parsed() ? "header"
                                                      : "naive";
      std::ostringstream buffer;
      run_sim(kind, sa, buffer);
      Sink sink(sa.out, out);
      *sink << buffer.str();
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace qtag::cli
