#include <gtest/gtest.h>

#include "ctsbench/errors.hpp"
#include "ctsbench/netlist.hpp"
#include "ctsbench/synth.hpp"
#include "support.hpp"

using namespace ctsbench;
using testutil::ff;
using testutil::logic;
using testutil::make_netlist;
using testutil::net;

namespace {

const char* kMinimal = R"({
  "design_name": "mini",
  "die_width": 10.0,
  "die_height": 5.0,
  "cells": [
    {"id": "f0", "kind": "ff", "x": 1.0, "y": 2.0, "master": "dfxtp"},
    {"id": "g0", "kind": "logic", "x": 3.0, "y": 2.0, "master": "inv"}
  ],
  "nets": [{"id": "n0", "driver": "f0", "sinks": ["g0"]}]
})";

std::string with(std::string doc, const std::string& from, const std::string& to) {
  const auto pos = doc.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return doc.replace(pos, from.size(), to);
}

}  // namespace

TEST(ParseNetlist, MinimalDocument) {
  const PlacedNetlist n = parse_netlist(kMinimal);
  EXPECT_EQ(n.design_name, "mini");
  ASSERT_EQ(n.cells.size(), 2u);
  ASSERT_EQ(n.nets.size(), 1u);
  EXPECT_TRUE(n.cells[0].is_ff());
  EXPECT_EQ(n.cells[0].x, 1.0);
  EXPECT_EQ(n.cells[0].y, 2.0);
  EXPECT_FALSE(n.cells[1].is_ff());
  EXPECT_EQ(n.nets[0].sinks, std::vector<std::string>{"g0"});
}

TEST(ParseNetlist, DanglingSinkIsReferenceError) {
  EXPECT_THROW(parse_netlist(with(kMinimal, R"(["g0"])", R"(["g9"])")), ReferenceError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("driver": "f0")", R"("driver": "zz")")), ReferenceError);
}

TEST(ParseNetlist, InvariantViolations) {
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("x": 3.0)", R"("x": 10.5)")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("x": 3.0)", R"("x": -0.5)")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("id": "g0")", R"("id": "f0")")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("kind": "ff")", R"("kind": "logic")")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"(["g0"])", R"(["f0"])")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"(["g0"])", R"(["g0", "g0"])")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"(["g0"])", R"([])")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("die_width": 10.0)", R"("die_width": 0)")), InvariantError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("master": "inv")", R"("master": "inv", "control_net": "r")")),
               InvariantError);
}

TEST(ParseNetlist, SyntaxErrors) {
  EXPECT_THROW(parse_netlist("{\"design_name\": "), SyntaxError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("kind": "ff")", R"("kind": "latch")")), SyntaxError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("x": 1.0)", R"("x": "1.0")")), SyntaxError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("design_name": "mini",)", R"("design_name": "mini", "extra": 1,)")),
               SyntaxError);
  EXPECT_THROW(parse_netlist(with(kMinimal, R"("die_height": 5.0,)", "")), SyntaxError);
}

TEST(ParseNetlist, SyntaxErrorReportsLine) {
  try {
    parse_netlist("{\n  \"design_name\": \"x\",\n  oops\n}");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.location(), 3u);
  }
}

TEST(WriteNetlist, RoundTripAndDeterminism) {
  const PlacedNetlist a = parse_netlist(kMinimal);
  const PlacedNetlist b = parse_netlist(kMinimal);
  EXPECT_EQ(write_netlist(a), write_netlist(b));
  EXPECT_EQ(parse_netlist(write_netlist(a)), a);
}

TEST(WriteNetlist, GeneratedNetlistsRoundTrip) {
  for (std::size_t size : {20u, 500u}) {
    Rng rng(size);
    const auto knobs = sample_placement_knobs(rng);
    const PlacedNetlist n = generate_netlist(knobs, size, 77).netlist;
    ASSERT_EQ(n.cells.size(), size);
    const std::string text = write_netlist(n);
    EXPECT_EQ(parse_netlist(text), n);
    EXPECT_EQ(write_netlist(parse_netlist(text)), text);
  }
}

TEST(WriteNetlist, AwkwardIdsRoundTrip) {
  Rng rng(4);
  testutil::RandomNetlistOptions opt;
  opt.awkward_ids = true;
  for (int i = 0; i < 50; ++i) {
    const PlacedNetlist n = testutil::random_netlist(rng, opt);
    EXPECT_EQ(parse_netlist(write_netlist(n)), n);
  }
}

TEST(NormalizeCoords, DividesByDieSize) {
  const auto n = make_netlist(100, 80, {ff("f", 25, 40), logic("g", 100, 0)}, {net("n", "f", {"g"})});
  const auto m = normalize_coords(n);
  EXPECT_DOUBLE_EQ(m.at("f").x, 0.25);
  EXPECT_DOUBLE_EQ(m.at("f").y, 0.5);
  EXPECT_DOUBLE_EQ(m.at("g").x, 1.0);
  EXPECT_DOUBLE_EQ(m.at("g").y, 0.0);
}

TEST(NetlistIndex, Connectivity) {
  // f0 -> {g0, g1}; g0 -> {g1, f1}
  const auto n = make_netlist(10, 10, {ff("f0", 0, 0), ff("f1", 1, 1), logic("g0", 2, 2), logic("g1", 3, 3)},
                              {net("a", "f0", {"g1", "g0"}), net("b", "g0", {"g1", "f1"})});
  const NetlistIndex idx(n);
  EXPECT_EQ(idx.index_of("g1"), 3u);
  EXPECT_THROW(idx.index_of("nope"), ReferenceError);
  EXPECT_EQ(idx.fanout(0), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(idx.fanout(2), (std::vector<std::size_t>{1, 3}));
  EXPECT_TRUE(idx.fanout(1).empty());
  EXPECT_EQ(idx.neighbors(0), (std::vector<std::size_t>{2, 3}));
  // Sharing a net is enough: f1 and g1 are both sinks of b.
  EXPECT_EQ(idx.neighbors(1), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(idx.neighbors(3), (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 2}, {0, 3}, {1, 2}, {2, 3}};
  EXPECT_EQ(idx.pin_pairs(), pairs);
}
