// Copyright 2026 The farekit Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "farekit/io.hpp"

#include <gtest/gtest.h>

#include "farekit/median.hpp"

namespace farekit {
namespace {

constexpr std::string_view kLine = R"({
  "stations": ["v1", "v2", "v3"],
  "edges": [{"u": "v1", "v": "v2"}, {"u": "v2", "v": "v3", "length": 2.5}],
  "demand": [
    {"origin": "v1", "destination": "v2", "reference_price": 1},
    {"origin": "v1", "destination": "v3", "passengers": 2, "reference_price": 2,
     "path": ["v1", "v2", "v3"]}
  ]
})";

std::string error_of(std::string_view text) {
  try {
    load_instance_text(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceTest, ParsesDefaults) {
  const auto inst = load_instance_text(kLine);
  EXPECT_EQ(inst.ptn.num_stations(), 3u);
  EXPECT_EQ(inst.ptn.edge_length(0, 1), 1.0);
  EXPECT_EQ(inst.ptn.edge_length(1, 2), 2.5);
  ASSERT_EQ(inst.demand.size(), 2u);
  EXPECT_EQ(inst.demand[0].passengers, 1);
  EXPECT_EQ(inst.demand[0].path.nodes, (std::vector<StationId>{0, 1}));
  EXPECT_EQ(inst.demand[1].passengers, 2);
  EXPECT_FALSE(inst.config.has_value());
}

TEST(InstanceTest, MissingPathsUseShortestPaths) {
  const auto inst = load_instance_text(R"({
    "stations": ["a", "b", "c", "d"],
    "edges": [{"u": "a", "v": "b"}, {"u": "b", "v": "c"}, {"u": "c", "v": "d"},
              {"u": "a", "v": "d", "length": 5}],
    "demand": [{"origin": "a", "destination": "d", "reference_price": 3}]
  })");
  EXPECT_EQ(inst.demand[0].path.nodes, (std::vector<StationId>{0, 1, 2, 3}));
}

TEST(InstanceTest, ErrorsNameTheirLocation) {
  std::string text(kLine);
  text.replace(text.find(R"("path": ["v1", "v2", "v3"])"), 26, R"("path": ["v1", "v3"])");
  EXPECT_NE(error_of(text).find("demand[1].path[1]"), std::string::npos) << error_of(text);

  text = kLine;
  text.replace(text.find(R"("destination": "v2")"), 19, R"("destination": "zz")");
  EXPECT_NE(error_of(text).find("demand[0]"), std::string::npos) << error_of(text);

  text = kLine;
  text.replace(text.find(R"("length": 2.5)"), 13, R"("length": -1)");
  EXPECT_NE(error_of(text).find("edges[1]"), std::string::npos) << error_of(text);

  EXPECT_FALSE(error_of("{").empty());
  EXPECT_FALSE(error_of(R"({"stations": []})").empty());
}

TEST(InstanceTest, RoundTrip) {
  for (const auto& name : fixture_names()) {
    const auto inst = load_fixture(name).instance;
    const Json doc = instance_to_json(inst);
    const auto again = parse_instance(doc);
    EXPECT_EQ(instance_to_json(again), doc) << name;
    ASSERT_EQ(again.demand.size(), inst.demand.size());
    for (std::size_t d = 0; d < inst.demand.size(); ++d) {
      EXPECT_EQ(again.demand[d].path.nodes, inst.demand[d].path.nodes);
    }
  }
}

TEST(FixtureTest, NamesAndAliases) {
  const auto names = fixture_names();
  EXPECT_EQ(names.size(), 8u);
  EXPECT_EQ(load_fixture("fig2").name, load_fixture("fig2-fewer-zones").name);
  EXPECT_EQ(load_fixture("fig1").name, "fig1-distance");
  EXPECT_THROW(load_fixture("nope"), InvalidInput);
  const auto fig2 = load_fixture("fig2").instance;
  EXPECT_EQ(fig2.ptn.num_stations(), 3u);
  EXPECT_EQ(fig2.demand.size(), 3u);
  for (const auto& name : names) {
    for (const auto& e : load_fixture(name).expected) {
      EXPECT_TRUE(e.provenance.starts_with("published") || e.provenance.starts_with("derived"))
          << name << ": " << e.provenance;
    }
  }
}

TEST(ConfigTest, ParseAndSerialize) {
  const Json doc = Json::parse(
      R"({"counting": "single", "connected": true, "max_zones": 3, "no_elongation": true})");
  const auto cfg = parse_config(doc, "config");
  EXPECT_EQ(cfg.mode, CountingMode::Single);
  EXPECT_TRUE(cfg.connected);
  EXPECT_EQ(cfg.max_zones, 3);
  EXPECT_TRUE(cfg.require_no_elongation);
  EXPECT_FALSE(cfg.require_no_stopover);
  const auto again = parse_config(config_to_json(cfg), "config");
  EXPECT_EQ(again.mode, cfg.mode);
  EXPECT_EQ(again.max_zones, cfg.max_zones);
  EXPECT_THROW(parse_counting("double"), InvalidInput);
  EXPECT_THROW(parse_metric("manhattan"), InvalidInput);
}

TEST(PartitionTest, MapAndBlockForms) {
  const auto ptn = load_instance_text(kLine).ptn;
  const auto a = parse_partition(ptn, Json::parse(R"({"v1": 1, "v2": 2, "v3": 1})"), "p");
  const auto b = parse_partition(ptn, Json::parse(R"([["v1", "v3"], ["v2"]])"), "p");
  EXPECT_EQ(a, b);
  EXPECT_EQ(parse_partition(ptn, partition_to_json(ptn, a), "p"), a);
  EXPECT_THROW(parse_partition(ptn, Json::parse(R"({"v1": 1, "v2": 2})"), "p"),
               InvalidInput);
}

TEST(TariffTest, RoundTrip) {
  const auto ptn = load_instance_text(kLine).ptn;
  const std::vector<int> z{1, 2, 1};
  const std::vector<Tariff> tariffs{
      FlatTariff{2.0}, AffineTariff{0.5, 1.0, DistanceMetric::Network},
      ZoneTariff{ZonePartition(z), CountingMode::Multiple, PriceList({1, 1, 2})}};
  for (const auto& t : tariffs) {
    const Json doc = tariff_to_json(ptn, t);
    EXPECT_EQ(tariff_to_json(ptn, parse_tariff(ptn, doc)), doc);
  }
  EXPECT_THROW(parse_tariff(ptn, Json::parse(R"({"type": "banana"})")), InvalidInput);
}

TEST(ReportTest, FlatDeviations) {
  const auto inst = load_fixture("fig2").instance;
  const auto sol = flat_design(std::span<const OdPair>(inst.demand));
  const Json r = report(inst.ptn, inst.demand, FlatTariff{sol.f}, "flat");
  EXPECT_EQ(r["objective"].get<double>(), 1.0);
  std::vector<double> deviations;
  for (const auto& od : r["od"]) deviations.push_back(od["deviation"].get<double>());
  EXPECT_EQ(deviations, (std::vector<double>{1, 0, 0}));
  const std::string table = render_report(r);
  EXPECT_NE(table.find("2.0000"), std::string::npos) << table;
}

TEST(ReportTest, ZoneTariff) {
  const auto inst = load_fixture("example1").instance;
  const std::vector<int> z{1, 2, 1};
  const ZoneTariff t{ZonePartition(z), CountingMode::Multiple, PriceList({1, 1, 2})};
  const Json r = report(inst.ptn, inst.demand, t, "ZD-MA");
  EXPECT_EQ(r["variant"], "ZD-MA");
  EXPECT_EQ(r["objective"].get<double>(), 0.0);
  for (const auto& od : r["od"]) EXPECT_TRUE(od.contains("zones"));
}

TEST(FormatTest, Prices) {
  EXPECT_EQ(format_price(2.0), "2.0000");
  EXPECT_EQ(format_price(1.23456), "1.2346");
}

}  // namespace
}  // namespace farekit
