// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "qtag/constructions.hpp"
#include "qtag/error.hpp"
#include "qtag/search.hpp"
#include "qtag/stream_sim.hpp"
#include "qtag/syncdec.hpp"

using namespace qtag;

namespace {

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

int g_failed = 0;

void criterion(int id, const std::string& title, double budget_seconds, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    c.failures.push_back("took " + std::to_string(secs) + " s, budget " + std::to_string(budget_seconds) + " s");
  }
  const bool pass = c.failures.empty();
  if (!pass) ++g_failed;
  std::printf("%s %d  %s  (%.2f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
  std::fflush(stdout);
}

std::string str(const Support& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

void check_certificate(Check& c, const std::string& name, const DifferenceSetTag& ds, int v, int k, int mu, int rho) {
  const auto& t = ds.tag;
  c.expect(t.v == v && t.k == k && ds.certificate.mu == mu && t.rho == rho && ds.certificate.verified,
           name + ": got (" + std::to_string(t.v) + "," + std::to_string(t.k) + "," +
               std::to_string(ds.certificate.mu) + "," + std::to_string(t.rho) + ")");
  c.expect(verify_difference_set(t.support, t.v) == mu, name + ": library verifier disagrees");
  c.expect(oracle::difference_set_mu(t.support, t.v) == mu, name + ": difference count disagrees");
  c.expect(oracle::comma_free_index(t.support, t.v) == rho, name + ": set-form index disagrees");
}

sim::CampaignCell exhaustive_cell(const QuantumTag& tag, int erasures, int incursions) {
  sim::CampaignCell cell;
  cell.family = "tag";
  cell.seq = sim::build_single_tag_sequence(tag, 3);
  cell.decoder = sim::Decoder::nearest_shift(tag);
  cell.noise.mode = sim::NoiseMode::Adversarial;
  cell.noise.e_erasures = erasures;
  cell.noise.e_incursions = incursions;
  cell.offsets.clear();
  for (long r = 0; r < tag.v; ++r) cell.offsets.push_back(r);  // every shift t = -r mod v
  return cell;
}

}  // namespace

int main() {
  criterion(1, "worked (27,5) tag {0,3,11,21,26}: rho 8, weight 5, optimal, bound 8, translate check", 1.0, [](Check& c) {
    const Support s{0, 3, 11, 21, 26};
    const auto tag = QuantumTag::from_support(s, 27);
    c.expect(tag.rho == 8, "rho = " + std::to_string(tag.rho));
    c.expect(tag.k == 5, "weight = " + std::to_string(tag.k));
    c.expect(tag.optimal && is_optimal_tag(tag), "not optimal");
    c.expect(comma_free_upper_bound(27, 5) == 8 && (2 * 5 * 22) / 26 == 8, "bound is not 8");
    c.expect(oracle::comma_free_index(s, 27) == 8, "set-form oracle disagrees");
    const Support t1 = translate(s, 1, 27);
    c.expect(t1 == Support{0, 1, 4, 12, 22}, "translate by 1 = " + str(t1));
    Support common;
    Support only;
    std::set_intersection(s.begin(), s.end(), t1.begin(), t1.end(), std::back_inserter(common));
    std::set_symmetric_difference(s.begin(), s.end(), t1.begin(), t1.end(), std::back_inserter(only));
    c.expect(common == Support{0}, "shared elements " + str(common));
    c.expect(only.size() == 8, "non-shared elements: " + std::to_string(only.size()));
  });

  criterion(2, "bound equality <=> difference set, exhaustive over (7,3) (11,5) (13,4) (15,7)", 30.0, [](Check& c) {
    for (auto [v, k] : std::vector<std::pair<int, int>>{{7, 3}, {11, 5}, {13, 4}, {15, 7}}) {
      long equal = 0;
      long sets = 0;
      oracle::for_each_subset(v, k, [&](const std::vector<int>& s) {
        if (s.front() != 0) return;
        const int rho = tag_comma_free_index(s, v);
        const bool meets = 2 * k * (v - k) == rho * (v - 1);
        const auto mu = verify_difference_set(s, v);
        equal += meets;
        sets += mu.has_value();
        c.expect(meets == mu.has_value(), "(" + std::to_string(v) + "," + std::to_string(k) + ") " + str(s) +
                                              ": equality " + std::to_string(meets) + " vs DS " +
                                              std::to_string(mu.has_value()));
        if (mu) c.expect(*mu * (v - 1) == k * (k - 1), "mu mismatch for " + str(s));
      });
      c.expect(equal > 0 && equal == sets, "(" + std::to_string(v) + "," + std::to_string(k) + "): " +
                                               std::to_string(equal) + " equality tags, " +
                                               std::to_string(sets) + " difference sets");
    }
  });

  criterion(3, "construction certificates (singer, residue, hall, twin prime)", 10.0, [](Check& c) {
    check_certificate(c, "singer(2,2)", singer_difference_set(2, 2), 7, 3, 1, 4);
    check_certificate(c, "singer(2,3)", singer_difference_set(2, 3), 15, 7, 3, 8);
    check_certificate(c, "singer(3,2)", singer_difference_set(3, 2), 13, 4, 1, 6);
    for (int p : {7, 11, 19, 23}) {
      check_certificate(c, "quadratic " + std::to_string(p), residue_ds(static_cast<std::uint64_t>(p), ResidueFamily::Quadratic),
                        p, (p - 1) / 2, (p - 3) / 4, (p + 1) / 2);
    }
    check_certificate(c, "quartic_zero 13", residue_ds(13, ResidueFamily::QuarticZero), 13, 4, 1, 6);
    check_certificate(c, "octic 73", residue_ds(73, ResidueFamily::Octic), 73, 9, 1, 16);
    check_certificate(c, "hall 31", hall_ds(31), 31, 15, 7, 16);
    check_certificate(c, "twin_prime 3", twin_prime_ds(3), 15, 7, 3, 8);
    check_certificate(c, "twin_prime 5", twin_prime_ds(5), 35, 17, 8, 18);
  });

  criterion(4, "nearest-shift decoding exact for every shift and every pattern within the radius", 300.0, [](Check& c) {
    for (const auto& tag : {singer_difference_set(2, 2).tag, QuantumTag::from_support({0, 3, 11, 21, 26}, 27)}) {
      const int radius = decoding_radius(tag.rho);
      std::vector<sim::CampaignCell> cells;
      for (int w = 0; w <= radius; ++w) {
        for (int e = 0; e <= w; ++e) cells.push_back(exhaustive_cell(tag, e, w - e));
      }
      const auto report = sim::run_campaign(cells, 2024);
      std::uint64_t trials = 0;
      for (const auto& row : report.rows) {
        trials += row.trials;
        c.expect(row.mode == "adversarial_exhaustive", "cell was sampled, not enumerated");
        c.expect(row.success_rate() == 1.0, "v=" + std::to_string(tag.v) + " r=" + std::to_string(row.offset) +
                                                " " + row.e_exact + ": " + std::to_string(row.successes) + "/" +
                                                std::to_string(row.trials));
      }
      // sum_{w <= radius} C(v, w) patterns per shift.
      std::uint64_t expect = 0;
      for (int w = 0; w <= radius; ++w) {
        std::uint64_t b = 1;
        for (int i = 0; i < w; ++i) b = b * static_cast<std::uint64_t>(tag.v - i) / static_cast<std::uint64_t>(i + 1);
        expect += b;
      }
      c.expect(trials == expect * static_cast<std::uint64_t>(tag.v),
               "v=" + std::to_string(tag.v) + ": " + std::to_string(trials) + " decodes, expected " +
                   std::to_string(expect * static_cast<std::uint64_t>(tag.v)));
    }
  });

  criterion(5, "searched OOCs: rho_c >= k-2, d >= 2k-2, size <= Johnson bound; (13,3) reaches 2", 30.0, [](Check& c) {
    for (auto [v, k] : std::vector<std::pair<int, int>>{{7, 3}, {13, 3}, {25, 4}}) {
      const auto r = search_ooc(v, k);
      const std::string tag = "(" + std::to_string(v) + "," + std::to_string(k) + ")";
      c.expect(!r.witnesses.empty(), tag + ": empty code");
      c.expect(verify_ooc(r.witnesses, v, 1, 1), tag + ": not an index-one OOC");
      std::vector<TagVector> vecs;
      for (const auto& w : r.witnesses) vecs.push_back(TagVector::from_support(w, v));
      const auto m = code_metrics(vecs);
      c.expect(m.rho_c >= k - 2, tag + ": rho_c " + std::to_string(m.rho_c));
      c.expect(m.d >= 2 * k - 2, tag + ": d " + std::to_string(m.d));
      c.expect(static_cast<int>(r.witnesses.size()) <= johnson_bound(v, k), tag + ": above the Johnson bound");
      std::vector<std::string> strs;
      for (const auto& w : r.witnesses) strs.push_back(oracle::bits(w, v));
      c.expect(oracle::code_rho_c(strs) == m.rho_c, tag + ": splice oracle disagrees");
      if (v == 13) c.expect(r.objective == 2 && johnson_bound(13, 3) == 2, "(13,3): size " + std::to_string(r.objective));
    }
  });

  criterion(6, "(13,3,1)-OOC pair with tau = 0: clean codewords identified, every clean splice rejected", 5.0, [](Check& c) {
    const auto set = ooc_tag_set({{0, 1, 4}, {0, 2, 7}}, 13);
    const int tau = decoding_radius(std::min(set.rho_c, set.d));
    c.expect(set.rho_c == 1 && set.d == 4 && tau == 0, "guarantees (" + std::to_string(set.rho_c) + "," +
                                                           std::to_string(set.d) + ") tau " + std::to_string(tau));
    const auto vecs = set.vectors();
    for (std::size_t j = 0; j < vecs.size(); ++j) {
      const auto r = orthogonal_decode(vecs[j], set);
      c.expect(r.status == SyncStatus::Aligned && r.digit == static_cast<int>(j), "codeword " + std::to_string(j));
    }
    int splices = 0;
    for (const auto& a : vecs) {
      for (const auto& b : vecs) {
        for (int i = 1; i < 13; ++i) {
          ++splices;
          const auto r = orthogonal_decode(splice(a, b, i), set);
          c.expect(r.status == SyncStatus::NoMatch, "splice at overlap " + std::to_string(i) + " decoded " +
                                                        std::string(to_string(r.status)));
        }
      }
    }
    c.expect(splices == 48, "splice count " + std::to_string(splices));
  });

  criterion(7, "DS(7,3,1) header: erasure-only exact under every single erasure, general exact at zero errors", 10.0, [](Check& c) {
    const auto ds = singer_difference_set(2, 2);
    const int delta = ds.header_delta();
    c.expect(delta == 2, "delta " + std::to_string(delta));
    c.expect(delta - 1 == 1, "erasure tolerance is not 1");
    c.expect(decoding_radius(delta) == 0, "general-mode tolerance is not 0");
    const auto erasure_dec = sim::Decoder::header(ds.tag, HeaderMode::ErasureOnly, delta);
    const auto general_dec = sim::Decoder::header(ds.tag, HeaderMode::General, delta);
    std::vector<std::vector<std::size_t>> layouts;
    for (std::size_t a = 7; 7 + a <= 40; ++a) {
      layouts.push_back({a});
      for (std::size_t b = 7; 14 + a + b <= 40; ++b) layouts.push_back({a, b});
    }
    long placements = 0;
    for (const auto& layout : layouts) {
      const auto seq = sim::build_header_sequence(ds.tag, layout);
      c.expect(run_sync_trial(seq, sim::ErrorPattern{}, general_dec, 0).success, "general mode, clean stream");
      c.expect(run_sync_trial(seq, sim::ErrorPattern{}, erasure_dec, 0).success, "erasure mode, clean stream");
      sim::for_each_error_pattern(seq.symbols, 1, 0, [&](const sim::ErrorPattern& p) {
        ++placements;
        const auto t = run_sync_trial(seq, p, erasure_dec, 0);
        c.expect(t.success, "erasure at " + std::to_string(p.erasures[0]) + " of a " +
                                std::to_string(seq.symbols.size()) + "-symbol stream");
      });
    }
    c.expect(layouts.size() == 118, "layouts " + std::to_string(layouts.size()));
    c.expect(placements > 0, "no placements");
  });

  criterion(8, "single-marker baseline: spurious boundaries at p = 0.01 over 1e5 payload symbols within 3 sigma of 1000", 30.0,
            [](Check& c) {
              sim::CampaignCell cell;
              cell.family = "naive";
              cell.seq = sim::build_naive_sequence(std::vector<std::size_t>(100, 1000));
              cell.decoder = sim::Decoder::naive();
              cell.noise.p_erasure = 0.01;
              const auto row = sim::run_campaign({cell}, 20240601).rows.front();
              const double n = 1e5;
              const double sigma = std::sqrt(n * 0.01 * 0.99);
              const double spurious = static_cast<double>(row.false_headers);
              std::printf("       spurious = %.0f, expected 1000, sigma = %.2f\n", spurious, sigma);
              c.expect(std::abs(spurious - 1000.0) <= 3 * sigma, "spurious count " + std::to_string(row.false_headers));

              // At matched weight one, any single erasure fools the baseline,
              // while the (7,3) tag decodes every weight-one pattern.
              sim::CampaignCell one = cell;
              one.seq = sim::build_naive_sequence({20, 20});
              one.noise = sim::NoiseConfig{};
              one.noise.mode = sim::NoiseMode::Adversarial;
              one.noise.e_erasures = 1;
              one.noise.window_length = one.seq.symbols.size();
              one.trials = 200;
              const auto naive_row = sim::run_campaign({one}, 1).rows.front();
              c.expect(naive_row.successes == 0 && naive_row.false_headers == naive_row.trials,
                       "baseline survived a single erasure");
              const auto tag = singer_difference_set(2, 2).tag;
              const auto tag_row = sim::run_campaign({exhaustive_cell(tag, 1, 0), exhaustive_cell(tag, 0, 1)}, 1).rows;
              for (const auto& r : tag_row) c.expect(r.success_rate() == 1.0, "tag failed at weight one");
            });

  criterion(9, "every sim subcommand is byte-identical across repeated runs", 60.0, [](Check& c) {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "qtag_acceptance";
    fs::create_directories(dir);
    auto cli = [&](std::vector<std::string> args) {
      args.insert(args.begin(), "qtag");
      std::ostringstream out;
      std::ostringstream err;
      const int code = cli::run(args, out, err);
      c.expect(code == 0, "exit " + std::to_string(code) + ": " + err.str());
    };
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const std::string tag = (dir / "tag.jsonl").string();
    const std::string code = (dir / "code.jsonl").string();
    cli({"tag", "gen", "--family", "external", "--support", "0,3,11,21,26", "--v", "27", "--delta", "4", "--out", tag});
    cli({"ooc", "search", "--v", "13", "--k", "3", "--tags-out", code, "--out", (dir / "ooc.json").string()});
    const std::vector<std::vector<std::string>> runs{
        {"sim", "sync", "--tag", tag, "--seed", "7", "--p-erasure", "0.01,0.05", "--p-incursion", "0.02",
         "--offsets", "0,1,5,-3", "--trials", "500"},
        {"sim", "sync", "--tag", tag, "--seed", "7", "--adversarial", "2:1,3:1", "--offsets", "4"},
        {"sim", "orthogonal", "--code", code, "--seed", "11", "--digits", "0,1,1,0", "--offsets", "0,3,13",
         "--p-erasure", "0.02", "--trials", "300"},
        {"sim", "header", "--tag", tag, "--seed", "5", "--payloads", "30,41,27,90", "--mode", "erasure_only",
         "--p-erasure", "0.01,0.03", "--trials", "200"},
        {"sim", "naive", "--seed", "3", "--frames", "50", "--payload-len", "200", "--p-erasure", "0.01", "--trials", "20"}};
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto a = dir / ("a" + std::to_string(i) + ".csv");
      const auto b = dir / ("b" + std::to_string(i) + ".csv");
      auto args = runs[i];
      args.insert(args.end(), {"--out", a.string()});
      cli(args);
      args.back() = b.string();
      cli(args);
      const auto sa = slurp(a);
      c.expect(!sa.empty() && sa == slurp(b), runs[i][1] + ": outputs differ");
      c.expect(sa.rfind(sim::kCampaignCsvHeader, 0) == 0, runs[i][1] + ": missing CSV header");
    }
  });

  std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed;
}
