#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "qtag/error.hpp"
#include "qtag/tags.hpp"

using namespace qtag;

namespace {

const Support kTag27{0, 3, 11, 21, 26};

TagVector tv(std::string_view s) { return TagVector::from_string(s); }

}  // namespace

TEST_CASE("cyclic shift and translate") {
  CHECK(cyclic_shift(tv("1100"), 1) == tv("0110"));
  CHECK(cyclic_shift(tv("1100"), 4) == tv("1100"));
  CHECK(cyclic_shift(tv("1100"), -1) == tv("1001"));
  CHECK(cyclic_shift(TagVector::from_support(kTag27, 27), 1).support() == Support{0, 1, 4, 12, 22});
  CHECK(translate({0, 1, 3}, 1, 7) == Support{1, 2, 4});
  CHECK(translate(kTag27, 1, 27) == Support{0, 1, 4, 12, 22});
  CHECK(translate({}, 5, 9).empty());
  CHECK(translate({0, 1, 3}, -8, 7) == Support{0, 2, 6});
}

TEST_CASE("vectors and supports") {
  const auto x = TagVector::from_support({0, 4, 6}, 7);
  CHECK(x.to_string() == "1000101");
  CHECK(x.weight() == 3);
  CHECK(x.support() == Support{0, 4, 6});
  CHECK_THROWS_AS(make_support({0, 7}, 7), Error);
  CHECK_THROWS_AS(make_support({1, 1}, 7), Error);
  CHECK(make_support({3, 0, 1}, 7) == Support{0, 1, 3});
  CHECK_THROWS_AS(TagVector::from_string("10a"), Error);
}

TEST_CASE("periodic and aperiodic correlation examples") {
  const auto f1 = TagVector::from_support(kTag27, 27);
  CHECK(periodic_correlation(f1, f1, 0) == 5);
  const auto ds = TagVector::from_support({0, 1, 3}, 7);
  for (int t = 1; t < 7; ++t) CHECK(periodic_correlation(ds, ds, t) == 1);
  CHECK(periodic_correlation(tv("1000"), tv("0010"), 2) == 1);
  CHECK_THROWS_AS(periodic_correlation(tv("10"), tv("100"), 0), Error);

  const auto h = TagVector::from_support({0, 4, 6}, 7);
  CHECK(aperiodic_correlation(h, h, 7) == 0);
  CHECK(aperiodic_correlation(h, h, 2) == 1);
  CHECK(aperiodic_correlation(h, h, 0) == 3);
  CHECK(aperiodic_correlation(h, h, -100) == 0);
  CHECK_THROWS_AS(aperiodic_correlation(tv("10"), tv("100"), 0), Error);
}

TEST_CASE("comma-free index examples and bound") {
  CHECK(tag_comma_free_index(kTag27, 27) == 8);
  CHECK(tag_comma_free_index({0, 1, 3}, 7) == 4);
  CHECK(tag_comma_free_index({0, 2}, 4) == 0);
  CHECK_THROWS_AS(tag_comma_free_index({}, 5), Error);

  CHECK(comma_free_upper_bound(27, 5) == 8);
  CHECK(comma_free_upper_bound(7, 3) == 4);
  CHECK(comma_free_upper_bound(9, 9) == 0);
  CHECK_THROWS_AS(comma_free_upper_bound(1, 1), Error);
  CHECK_THROWS_AS(comma_free_upper_bound(7, 0), Error);

  CHECK(is_optimal_tag(QuantumTag::from_support(kTag27, 27)));
  CHECK(is_optimal_tag(QuantumTag::from_support({0, 1, 3}, 7)));
  CHECK_FALSE(is_optimal_tag(QuantumTag::from_support({0, 1, 2}, 7)));
  CHECK(QuantumTag::from_support({0, 1, 2}, 7).rho == 2);
}

TEST_CASE("the (27,5) example tag and its first translate share one element") {
  const Support t1 = translate(kTag27, 1, 27);
  Support common;
  std::set_intersection(kTag27.begin(), kTag27.end(), t1.begin(), t1.end(), std::back_inserter(common));
  CHECK(common == Support{0});
  const auto x = TagVector::from_support(kTag27, 27);
  CHECK(hamming_distance(x, cyclic_shift(x, 1)) == 8);
}

TEST_CASE("comma-free index agrees with the set-form oracle, and is shift invariant") {
  for (int v = 2; v <= 14; ++v) {
    for (int k = 1; k <= v; ++k) {
      oracle::for_each_subset(v, k, [&](const std::vector<int>& s) {
        const int rho = tag_comma_free_index(s, v);
        REQUIRE(rho == oracle::comma_free_index(s, v));
        for (int i = 1; i < v; ++i) REQUIRE(tag_comma_free_index(translate(s, i, v), v) == rho);
      });
    }
  }
}

TEST_CASE("shift invariance up to v = 40 on structured supports") {
  for (int v = 15; v <= 40; ++v) {
    for (int k = 2; k <= 6 && k < v; ++k) {
      std::mt19937 rng(static_cast<unsigned>(100 * v + k));
      for (int trial = 0; trial < 20; ++trial) {
        std::set<int> s;
        while (static_cast<int>(s.size()) < k) s.insert(static_cast<int>(rng() % static_cast<unsigned>(v)));
        const Support sup(s.begin(), s.end());
        const int rho = tag_comma_free_index(sup, v);
        CHECK(rho == oracle::comma_free_index(sup, v));
        for (int i = 1; i < v; ++i) CHECK(tag_comma_free_index(translate(sup, i, v), v) == rho);
      }
    }
  }
}

TEST_CASE("autocorrelation identities") {
  for (int v = 2; v <= 12; ++v) {
    for (int k = 0; k <= v; ++k) {
      oracle::for_each_subset(v, k, [&](const std::vector<int>& s) {
        const auto x = TagVector::from_support(s, v);
        const auto prof = autocorrelation_profile(x);
        REQUIRE(prof[0] == k);
        for (int t = 1; t < v; ++t) REQUIRE(prof[t] == prof[v - t]);
        REQUIRE(std::accumulate(prof.begin() + 1, prof.end(), 0) == k * (k - 1));
      });
    }
  }
}

TEST_CASE("sum of off-peak autocorrelations up to v = 40") {
  for (int v = 13; v <= 40; ++v) {
    for (int k = 1; k <= 5; ++k) {
      std::set<int> elems;
      for (int j = 0; j < k; ++j) elems.insert((j * (j + 3) / 2) % v);
      const Support s(elems.begin(), elems.end());
      const int w = static_cast<int>(s.size());
      const auto prof = autocorrelation_profile(TagVector::from_support(s, v));
      CHECK(std::accumulate(prof.begin() + 1, prof.end(), 0) == w * (w - 1));
    }
  }
}

TEST_CASE("aperiodic never exceeds periodic; both match string oracles") {
  for (int v = 1; v <= 8; ++v) {
    for (int kx = 0; kx <= v; ++kx) {
      oracle::for_each_subset(v, kx, [&](const std::vector<int>& a) {
        for (int ky = 0; ky <= v; ++ky) {
          oracle::for_each_subset(v, ky, [&](const std::vector<int>& b) {
            const auto x = TagVector::from_support(a, v);
            const auto y = TagVector::from_support(b, v);
            const auto sx = oracle::bits(a, v);
            const auto sy = oracle::bits(b, v);
            for (int t = -v; t <= v; ++t) {
              const int ap = aperiodic_correlation(x, y, t);
              REQUIRE(ap == oracle::aperiodic(sx, sy, t));
              REQUIRE(ap <= periodic_correlation(x, y, ((t % v) + v) % v));
              REQUIRE(periodic_correlation(x, y, t) == oracle::periodic(sx, sy, t));
            }
          });
        }
      });
    }
  }
}

TEST_CASE("splices and code metrics") {
  const auto a = tv("1100000");
  const auto b = tv("0000011");
  CHECK(splice(a, b, 2).to_string() == "0000000");
  CHECK(splice(a, b, 6).to_string() == "1000000");
  CHECK(splice(a, a, 1).to_string() == "0110000");

  const std::vector<TagVector> single{TagVector::from_support({0}, 7)};
  const auto m1 = code_metrics(single);
  CHECK(m1.rho_c == 2);
  CHECK(m1.d == 8);

  const std::vector<TagVector> dup{tv("1010"), tv("1010")};
  try {
    (void)code_metrics(dup);
    FAIL("expected DuplicateCodeword");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateCodeword);
  }
  CHECK_THROWS_AS(code_metrics(std::vector<TagVector>{}), Error);
  CHECK_THROWS_AS(code_metrics(std::vector<TagVector>{tv("10"), tv("100")}), Error);
}

TEST_CASE("code metrics match the splice oracle on small codes") {
  // A strided sample of pairs of weight-3 supports of length 8.
  std::vector<std::vector<int>> subsets;
  oracle::for_each_subset(8, 3, [&](const std::vector<int>& s) { subsets.push_back(s); });
  for (std::size_t i = 0; i < subsets.size(); i += 3) {
    for (std::size_t j = i + 1; j < subsets.size(); j += 5) {
      const std::vector<TagVector> code{TagVector::from_support(subsets[i], 8),
                                        TagVector::from_support(subsets[j], 8)};
      const std::vector<std::string> strs{oracle::bits(subsets[i], 8), oracle::bits(subsets[j], 8)};
      const auto m = code_metrics(code);
      CHECK(m.rho_c == oracle::code_rho_c(strs));
      CHECK(m.d == oracle::hamming(strs[0], strs[1]));
    }
  }
}

TEST_CASE("orthogonal tag sets") {
  const std::vector<Support> pair{{0, 1, 4}, {0, 2, 7}};
  const auto exact = OrthogonalTagSet::from_supports(pair, 13);
  CHECK(exact.rho_c == oracle::code_rho_c({oracle::bits({0, 1, 4}, 13), oracle::bits({0, 2, 7}, 13)}));
  CHECK(exact.d == 4);
  CHECK(exact.size() == 2);

  const auto declared = OrthogonalTagSet::with_guarantees(pair, 13, 1, 4);
  CHECK(declared.rho_c == 1);
  try {
    (void)OrthogonalTagSet::with_guarantees(pair, 13, exact.rho_c + 1, 4);
    FAIL("expected VerificationMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VerificationMismatch);
  }
  CHECK_THROWS_AS(OrthogonalTagSet::from_supports({{0, 1}, {0, 1, 2}}, 7), Error);
  // {0,2} in Z_4 splices onto itself.
  try {
    (void)OrthogonalTagSet::from_supports({{0, 2}}, 4);
    FAIL("expected NotSelfSynchronizing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSelfSynchronizing);
  }
}
