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

// JSON instance files, built-in fixtures and result reports. The schemas are
// documented in README.md.

#ifndef FAREKIT_IO_HPP_
#define FAREKIT_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "farekit/core.hpp"
#include "farekit/zone_design.hpp"
#include "farekit/zone_pricing.hpp"

namespace farekit {

using Json = nlohmann::ordered_json;

struct Instance {
  std::string name;
  Ptn ptn;
  std::vector<OdPair> demand;
  std::optional<DesignConfig> config;
};

// Errors are InvalidInput with a location such as "demand[2].path[1]".
Instance parse_instance(const Json& doc);
Instance load_instance_text(std::string_view text);
Instance load_instance_file(const std::string& path);
Json instance_to_json(const Instance& instance);
// Just the "stations" and "edges" blocks of an instance document.
Ptn parse_graph(const Json& doc);

// A file path if one exists, otherwise a fixture name.
Instance resolve_instance(const std::string& path_or_fixture);

CountingMode parse_counting(std::string_view text);
DistanceMetric parse_metric(std::string_view text);
DesignConfig parse_config(const Json& doc, const std::string& where);
Json config_to_json(const DesignConfig& config);

// Either {"station": zone, ...} or [["station", ...], ...].
ZonePartition parse_partition(const Ptn& ptn, const Json& doc,
                              const std::string& where);
Json partition_to_json(const Ptn& ptn, const ZonePartition& partition);

// {"type": "flat", "f": ...} | {"type": "affine", "p", "f", "metric"} |
// {"type": "zone", "counting", "partition", "prices"}.
Tariff parse_tariff(const Ptn& ptn, const Json& doc);
Json tariff_to_json(const Ptn& ptn, const Tariff& tariff);

Json read_json_file(const std::string& path);

// Expected outcome attached to a fixture.
struct Expectation {
  enum class Compare { Equal, Positive };

  std::string label;
  std::string task;  // "flat", "affine", "zone-design" or "zone-prices"
  std::optional<DesignConfig> config;
  std::optional<DistanceMetric> metric;
  std::optional<ZonePartition> partition;  // witness or forced partition
  std::vector<double> prices;
  std::optional<double> p;
  std::optional<double> f;
  Compare compare = Compare::Equal;
  double objective = 0.0;
  std::string provenance;
};

struct Fixture {
  std::string name;
  std::string description;
  Instance instance;
  std::vector<Expectation> expected;
};

std::vector<std::string> fixture_names();
// Accepts the short aliases "fig1" and "fig2". Throws InvalidInput for
// unknown names.
Fixture load_fixture(std::string_view name);
std::string fixture_text(std::string_view name);

// Six-level demand of the worked monotone-pricing example.
LevelledDemand algorithm_trace_levels();

// Result document: variant, tariff, objective and per-OD fares.
Json report(const Ptn& ptn, std::span<const OdPair> demand,
            const Tariff& tariff, std::string_view variant);
// Human-readable table of a report, prices to 4 decimals.
std::string render_report(const Json& report);

std::string format_price(double value);

}  // namespace farekit

#endif  // FAREKIT_IO_HPP_
