#include <gtest/gtest.h>

#include "braidkh/errors.hpp"
#include "braidkh/states.hpp"
#include "oracles.hpp"

using namespace braidkh;

namespace {

KauffmanState state(const char* word, std::uint64_t bits) {
  const Diagram d = parse_braid_word(word);
  return resolve(d, Smoothing(d.crossing_count(), bits));
}

}  // namespace

TEST(Resolve, RoundCircle) {
  const KauffmanState s = state("B1", 0);
  ASSERT_EQ(s.circles.size(), 1u);
  EXPECT_EQ(s.circles[0].break_points, 0);
  EXPECT_EQ(s.circles[0].type, CircleType::H);
}

TEST(Resolve, ClosureOfSigmaOne) {
  const KauffmanState a = state("B2 1", 0);
  ASSERT_EQ(a.circles.size(), 2u);
  for (const auto& c : a.circles) {
    EXPECT_EQ(c.break_points, 0);
    EXPECT_EQ(c.type, CircleType::H);
  }
  EXPECT_EQ(configuration_of(a).canonical, "(())");

  const KauffmanState b = state("B2 1", 1);
  ASSERT_EQ(b.circles.size(), 1u);
  EXPECT_EQ(b.circles[0].break_points, 2);
  EXPECT_EQ(b.circles[0].type, CircleType::D);
  EXPECT_EQ(configuration_of(b).canonical, "");
}

TEST(Resolve, HopfStates) {
  const std::vector<std::pair<int, int>> expect{{2, 0}, {0, 1}, {0, 1}, {0, 2}};  // (h, d)
  for (std::uint64_t bits = 0; bits < 4; ++bits) {
    const KauffmanState s = state("B2 1 1", bits);
    EXPECT_EQ(s.h_count(), expect[bits].first) << bits;
    EXPECT_EQ(s.d_count(), expect[bits].second) << bits;
  }
}

TEST(Resolve, CircleTypeFollowsBreakCount) {
  const Diagram d = parse_braid_word("B3 1 -2 1 2 -1");
  for (std::uint64_t bits = 0; bits < 32; ++bits) {
    const KauffmanState s = resolve(d, Smoothing(5, bits));
    int total = 0, disoriented = 0;
    for (const auto& c : s.circles) {
      EXPECT_EQ(c.break_points % 2, 0);
      EXPECT_EQ(c.type == CircleType::H, c.break_points % 4 == 0);
      total += c.break_points;
    }
    for (int v = 0; v < 5; ++v) disoriented += s.smoothing.at(v) == disoriented_resolution(d.crossing(v).sign);
    EXPECT_EQ(total, 2 * disoriented);
  }
}

TEST(Resolve, AgreesWithIndependentTracer) {
  for (const char* w : {"B2 1 1 1", "B3 1 -2 1 -2", "B4 1 2 3 -2 1", "B3 1"}) {
    const Diagram d = parse_braid_word(w);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d.crossing_count()); ++bits) {
      const KauffmanState s = resolve(d, Smoothing(d.crossing_count(), bits));
      const oracle::Circles o = oracle::trace(d, bits);
      ASSERT_EQ(static_cast<int>(s.circles.size()), o.count);
      for (int c = 0; c < o.count; ++c) {
        EXPECT_EQ(s.circles[c].break_points, o.breaks[c]);
        EXPECT_EQ(s.circles[c].edge_cycle.front().edge, o.members[c].front());
      }
    }
  }
}

TEST(Resolve, WrongLengthIsRejected) {
  const Diagram d = parse_braid_word("B2 1 1");
  EXPECT_THROW(resolve(d, Smoothing(3, 0)), PreconditionError);
}

TEST(Sigma, CountsSmoothings) {
  EXPECT_EQ(sigma(state("B2 1 1 1", 0)), 3);
  EXPECT_EQ(sigma(state("B2 1 1 1", 7)), -3);
  EXPECT_EQ(sigma(state("B2 1 1 1", 2)), 1);
}

TEST(Seifert, TrefoilAndUnlink) {
  const KauffmanState t = seifert_state(parse_braid_word("B2 1 1 1"));
  EXPECT_EQ(t.circles.size(), 2u);
  EXPECT_EQ(t.h_count(), 2);
  EXPECT_EQ(sigma(t), 3);
  const KauffmanState u = seifert_state(parse_braid_word("B2 1 -1"));
  EXPECT_EQ(u.circles.size(), 2u);
  EXPECT_EQ(sigma(u), 0);
}

TEST(Seifert, AllCirclesHAndSigmaIsWrithe) {
  for (const char* w : {"B3 1 -2 1 2 -1", "B4 -1 3 2 -3", "B2 -1 -1", "B1"}) {
    const Diagram d = parse_braid_word(w);
    const KauffmanState s = seifert_state(d);
    for (const auto& c : s.circles) EXPECT_EQ(c.type, CircleType::H) << w;
    EXPECT_EQ(sigma(s), writhe(d)) << w;
  }
}

TEST(Configuration, Canonical) {
  EXPECT_EQ(configuration_from_forest({}).canonical, "");
  EXPECT_EQ(configuration_from_forest({-1, -1}).canonical, "()()");
  EXPECT_EQ(configuration_from_forest({-1, 0}).canonical, "(())");
  // Children sorted: "(())" < "()".
  EXPECT_EQ(configuration_from_forest({-1, 0, 0, 2}).canonical, "((())())");
  EXPECT_EQ(configuration_from_forest({1, -1, -1}).canonical, "(())()");
  EXPECT_EQ(Configuration{"(())()"}.circle_count(), 3);
}

TEST(Configuration, SeifertOfSigmaOneIsNested) {
  EXPECT_EQ(configuration_of(seifert_state(parse_braid_word("B2 1"))).canonical, "(())");
  EXPECT_EQ(configuration_of(seifert_state(parse_braid_word("B3"))).canonical, "((()))");
}

TEST(Configuration, DCirclesAreTransparent) {
  // Split 3-braid: strand 3 is an h-circle around the d-circle of the sigma_1 part.
  const KauffmanState s = state("B3 1", 1);
  EXPECT_EQ(s.d_count(), 1);
  EXPECT_EQ(configuration_of(s).canonical, "()");
}

TEST(Enumerate, CountsAndOrder) {
  int count = 0;
  enumerate_states(parse_braid_word("B1"), [&](const KauffmanState&) { ++count; });
  EXPECT_EQ(count, 1);
  std::vector<std::uint64_t> seen;
  enumerate_states(parse_braid_word("B2 1 1 1"), [&](const KauffmanState& s) { seen.push_back(s.smoothing.bits()); });
  EXPECT_EQ(seen, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Enumerate, CapIsEnforced) {
  try {
    enumerate_states(parse_braid_word("B2 1 1 1 1 1"), [](const KauffmanState&) {}, 4);
    FAIL() << "expected a size cap error";
  } catch (const SizeCapError& e) {
    EXPECT_EQ(e.required(), 5);
    EXPECT_EQ(e.cap(), 4);
  }
}

TEST(Winding, Examples) {
  const Diagram d = parse_braid_word("B2 1");
  const KauffmanState b = resolve(d, Smoothing(1, 1));
  EXPECT_EQ(winding_number(d, b.circles[0]), 0);
  const Diagram t = parse_braid_word("B2 1 1 1");
  for (const auto& c : seifert_state(t).circles) EXPECT_EQ(winding_number(t, c), 1);
  const Diagram o = parse_braid_word("B1");
  EXPECT_EQ(winding_number(o, resolve(o, Smoothing(0, 0)).circles[0]), 1);
}

TEST(Winding, ZeroExactlyForDCircles) {
  for (const char* w : {"B3 1 -2 1 2 -1", "B4 -1 3 2 -3 1", "B2 -1 -1 1"}) {
    const Diagram d = parse_braid_word(w);
    enumerate_states(d, [&](const KauffmanState& s) {
      for (const auto& c : s.circles) {
        const int k = winding_number(d, c);
        EXPECT_LE(std::abs(k), 1);
        EXPECT_EQ(k == 0, c.type == CircleType::D);
      }
    });
  }
}

TEST(Winding, NeedsClosureArcs) {
  const Diagram d = oracle::permute_crossings(parse_braid_word("B2 1 1"), {0, 1});
  Diagram plain(d.crossings(), [&] {
    auto es = d.edges();
    for (auto& e : es) e.closure = 0;
    return es;
  }(), d.outer_face(), false);
  const KauffmanState s = seifert_state(plain);
  EXPECT_THROW(winding_number(plain, s.circles[0]), UnsupportedError);
}

TEST(Reverse, KeepsBreaksSigmaAndConfiguration) {
  const Diagram d = parse_braid_word("B3 1 -2 1 2");
  const Diagram r = reverse_orientation(d);
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const KauffmanState a = resolve(d, Smoothing(4, bits)), b = resolve(r, Smoothing(4, bits));
    ASSERT_EQ(a.circles.size(), b.circles.size());
    for (std::size_t c = 0; c < a.circles.size(); ++c) EXPECT_EQ(a.circles[c].break_points, b.circles[c].break_points);
    EXPECT_EQ(configuration_of(a), configuration_of(b));
  }
}
