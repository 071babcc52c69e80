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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "fixtures.inc"

namespace farekit {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput(where + ": " + what);
}

std::string at(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

std::string at(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

const Json& require(const Json& doc, std::string_view key,
                    const std::string& where) {
  if (!doc.is_object()) fail(where.empty() ? "document" : where, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(at(where, key), "missing field");
  return *it;
}

double number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

std::int64_t integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    if (value.is_number_float()) {
      const double x = value.get<double>();
      if (std::floor(x) == x && std::abs(x) < 9e15) {
        return static_cast<std::int64_t>(x);
      }
    }
    fail(where, "expected an integer");
  }
  return value.get<std::int64_t>();
}

bool boolean(const Json& value, const std::string& where) {
  if (!value.is_boolean()) fail(where, "expected true or false");
  return value.get<bool>();
}

std::string text(const Json& value, const std::string& where) {
  if (!value.is_string()) fail(where, "expected a string");
  return value.get<std::string>();
}

StationId station(const Ptn& ptn, const Json& value, const std::string& where) {
  const std::string name = text(value, where);
  const auto id = ptn.find(name);
  if (!id) fail(where, "unknown station '" + name + "'");
  return *id;
}

template <typename F>
auto located(const std::string& where, F&& body) {
  try {
    return body();
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

Ptn parse_ptn(const Json& doc) {
  const Json& stations = require(doc, "stations", "");
  if (!stations.is_array() || stations.empty()) {
    fail("stations", "expected a nonempty array");
  }
  std::vector<std::string> names;
  std::vector<std::optional<Point2>> coords;
  bool any_coords = false;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const std::string where = at("stations", i);
    const Json& s = stations[i];
    if (s.is_string()) {
      names.push_back(s.get<std::string>());
      coords.emplace_back();
      continue;
    }
    names.push_back(text(require(s, "id", where), at(where, "id")));
    const bool has_x = s.contains("x");
    const bool has_y = s.contains("y");
    if (has_x != has_y) fail(where, "coordinates need both x and y");
    if (has_x) {
      coords.push_back(Point2{number(s["x"], at(where, "x")),
                              number(s["y"], at(where, "y"))});
      any_coords = true;
    } else {
      coords.emplace_back();
    }
  }
  std::map<std::string, StationId> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) fail(at("stations", i), "empty station id");
    if (!index.emplace(names[i], i).second) {
      fail(at("stations", i), "duplicate station id '" + names[i] + "'");
    }
  }
  const Json& edges = require(doc, "edges", "");
  if (!edges.is_array()) fail("edges", "expected an array");
  std::vector<Edge> parsed;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = at("edges", i);
    const Json& e = edges[i];
    auto endpoint = [&](std::string_view key) {
      const std::string w = at(where, key);
      const std::string name = text(require(e, key, where), w);
      const auto it = index.find(name);
      if (it == index.end()) fail(w, "unknown station '" + name + "'");
      return it->second;
    };
    Edge edge{endpoint("u"), endpoint("v"), 1.0};
    if (e.contains("length")) edge.length = number(e["length"], at(where, "length"));
    if (!(edge.length > 0.0)) fail(at(where, "length"), "must be positive");
    if (edge.u == edge.v) fail(where, "loop edge");
    parsed.push_back(edge);
  }
  if (!any_coords) coords.clear();
  return located("ptn", [&] {
    return Ptn(std::move(names), std::move(parsed), std::move(coords));
  });
}

std::vector<OdPair> parse_demand(const Ptn& ptn, const Json& doc) {
  const Json& demand = require(doc, "demand", "");
  if (!demand.is_array()) fail("demand", "expected an array");
  std::vector<OdPair> out;
  for (std::size_t i = 0; i < demand.size(); ++i) {
    const std::string where = at("demand", i);
    const Json& d = demand[i];
    OdPair od;
    od.origin = station(ptn, require(d, "origin", where), at(where, "origin"));
    od.destination =
        station(ptn, require(d, "destination", where), at(where, "destination"));
    if (d.contains("passengers")) {
      od.passengers = integer(d["passengers"], at(where, "passengers"));
    }
    od.reference_price = number(require(d, "reference_price", where),
                                at(where, "reference_price"));
    if (od.origin == od.destination) fail(where, "origin equals destination");
    if (d.contains("path")) {
      const Json& path = d["path"];
      const std::string w = at(where, "path");
      if (!path.is_array()) fail(w, "expected an array of stations");
      for (std::size_t j = 0; j < path.size(); ++j) {
        od.path.nodes.push_back(station(ptn, path[j], at(w, j)));
        if (j > 0 && !ptn.adjacent(od.path.nodes[j - 1], od.path.nodes[j])) {
          fail(at(w, j), "not adjacent to the previous station");
        }
      }
    } else {
      od.path = shortest_path(ptn, od.origin, od.destination);
    }
    located(where, [&] {
      validate_od_pair(ptn, od);
      return 0;
    });
    out.push_back(std::move(od));
  }
  return out;
}

std::string_view counting_text(CountingMode mode) {
  return mode == CountingMode::Multiple ? "multiple" : "single";
}

}  // namespace

CountingMode parse_counting(std::string_view s) {
  if (s == "multiple") return CountingMode::Multiple;
  if (s == "single") return CountingMode::Single;
  throw InvalidInput("counting must be 'multiple' or 'single', got '" +
                     std::string(s) + "'");
}

DistanceMetric parse_metric(std::string_view s) {
  if (s == "network") return DistanceMetric::Network;
  if (s == "beeline") return DistanceMetric::Beeline;
  throw InvalidInput("metric must be 'network' or 'beeline', got '" +
                     std::string(s) + "'");
}

DesignConfig parse_config(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where, "expected an object");
  DesignConfig config;
  if (doc.contains("counting")) {
    const std::string w = at(where, "counting");
    config.mode = located(w, [&] { return parse_counting(text(doc["counting"], w)); });
  }
  if (doc.contains("connected")) {
    config.connected = boolean(doc["connected"], at(where, "connected"));
  }
  if (doc.contains("max_zones")) {
    const auto n = integer(doc["max_zones"], at(where, "max_zones"));
    if (n < 1 || n > 1000000) fail(at(where, "max_zones"), "must be >= 1");
    config.max_zones = static_cast<int>(n);
  }
  if (doc.contains("no_elongation")) {
    config.require_no_elongation =
        boolean(doc["no_elongation"], at(where, "no_elongation"));
  }
  if (doc.contains("no_stopover")) {
    config.require_no_stopover =
        boolean(doc["no_stopover"], at(where, "no_stopover"));
  }
  return config;
}

Json config_to_json(const DesignConfig& config) {
  Json out;
  out["counting"] = counting_text(config.mode);
  out["connected"] = config.connected;
  out["max_zones"] = config.max_zones;
  out["no_elongation"] = config.require_no_elongation;
  out["no_stopover"] = config.require_no_stopover;
  return out;
}

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) fail("document", "expected an object");
  Instance out;
  if (doc.contains("name")) out.name = text(doc["name"], "name");
  out.ptn = parse_ptn(doc);
  out.demand = parse_demand(out.ptn, doc);
  if (doc.contains("config")) {
    out.config = parse_config(doc["config"], "config");
    located("config", [&] {
      validate_config(out.ptn, *out.config);
      return 0;
    });
  }
  return out;
}

Ptn parse_graph(const Json& doc) { return parse_ptn(doc); }

Instance load_instance_text(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON: " + e.what());
  }
}

Instance load_instance_file(const std::string& path) {
  const Json doc = read_json_file(path);
  return located(path, [&] { return parse_instance(doc); });
}

Json instance_to_json(const Instance& instance) {
  const Ptn& ptn = instance.ptn;
  Json out;
  if (!instance.name.empty()) out["name"] = instance.name;
  Json stations = Json::array();
  for (StationId v = 0; v < ptn.num_stations(); ++v) {
    const auto c = ptn.coord(v);
    if (c) {
      stations.push_back({{"id", ptn.name(v)}, {"x", c->x}, {"y", c->y}});
    } else {
      stations.push_back(ptn.name(v));
    }
  }
  out["stations"] = std::move(stations);
  Json edges = Json::array();
  for (const auto& e : ptn.edges()) {
    edges.push_back({{"u", ptn.name(e.u)}, {"v", ptn.name(e.v)}, {"length", e.length}});
  }
  out["edges"] = std::move(edges);
  Json demand = Json::array();
  for (const auto& od : instance.demand) {
    Json path = Json::array();
    for (StationId v : od.path.nodes) path.push_back(ptn.name(v));
    demand.push_back({{"origin", ptn.name(od.origin)},
                      {"destination", ptn.name(od.destination)},
                      {"passengers", od.passengers},
                      {"reference_price", od.reference_price},
                      {"path", std::move(path)}});
  }
  out["demand"] = std::move(demand);
  if (instance.config) out["config"] = config_to_json(*instance.config);
  return out;
}

Instance resolve_instance(const std::string& path_or_fixture) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_fixture, ec)) {
    return load_instance_file(path_or_fixture);
  }
  try {
    return load_fixture(path_or_fixture).instance;
  } catch (const InvalidInput&) {
    throw InvalidInput("'" + path_or_fixture +
                       "' is neither a readable file nor a fixture name");
  }
}

ZonePartition parse_partition(const Ptn& ptn, const Json& doc,
                              const std::string& where) {
  std::vector<int> labels(ptn.num_stations(), 0);
  if (doc.is_object()) {
    for (const auto& [name, zone] : doc.items()) {
      const std::string w = at(where, name);
      const auto id = ptn.find(name);
      if (!id) fail(w, "unknown station '" + name + "'");
      const auto z = integer(zone, w);
      if (z < 1 || z > static_cast<std::int64_t>(ptn.num_stations())) {
        fail(w, "zone index out of range");
      }
      labels[*id] = static_cast<int>(z);
    }
  } else if (doc.is_array()) {
    for (std::size_t b = 0; b < doc.size(); ++b) {
      const std::string wb = at(where, b);
      if (!doc[b].is_array() || doc[b].empty()) fail(wb, "expected a nonempty array");
      for (std::size_t j = 0; j < doc[b].size(); ++j) {
        const StationId v = station(ptn, doc[b][j], at(wb, j));
        if (labels[v] != 0) fail(at(wb, j), "station in two zones");
        labels[v] = static_cast<int>(b) + 1;
      }
    }
  } else {
    fail(where, "expected a station map or a list of zones");
  }
  for (StationId v = 0; v < labels.size(); ++v) {
    if (labels[v] == 0) fail(where, "station '" + ptn.name(v) + "' has no zone");
  }
  return ZonePartition(labels);
}

Json partition_to_json(const Ptn& ptn, const ZonePartition& partition) {
  Json out = Json::object();
  for (StationId v = 0; v < ptn.num_stations(); ++v) {
    out[ptn.name(v)] = partition.zone(v);
  }
  return out;
}

Tariff parse_tariff(const Ptn& ptn, const Json& doc) {
  const std::string type = text(require(doc, "type", ""), "type");
  Tariff out;
  if (type == "flat") {
    out = FlatTariff{number(require(doc, "f", ""), "f")};
  } else if (type == "affine") {
    AffineTariff t;
    t.p = number(require(doc, "p", ""), "p");
    t.f = number(require(doc, "f", ""), "f");
    if (doc.contains("metric")) {
      t.metric = located("metric", [&] { return parse_metric(text(doc["metric"], "metric")); });
    }
    out = t;
  } else if (type == "zone") {
    ZoneTariff t;
    t.partition = parse_partition(ptn, require(doc, "partition", ""), "partition");
    if (doc.contains("counting")) {
      t.mode = located("counting", [&] { return parse_counting(text(doc["counting"], "counting")); });
    }
    const Json& prices = require(doc, "prices", "");
    if (!prices.is_array() || prices.empty()) fail("prices", "expected a nonempty array");
    std::vector<double> values;
    for (std::size_t k = 0; k < prices.size(); ++k) {
      values.push_back(number(prices[k], at("prices", k)));
    }
    t.prices = located("prices", [&] { return PriceList(std::move(values)); });
    out = t;
  } else {
    fail("type", "expected 'flat', 'affine' or 'zone'");
  }
  located("tariff", [&] {
    validate_tariff(out);
    return 0;
  });
  return out;
}

Json tariff_to_json(const Ptn& ptn, const Tariff& tariff) {
  Json out;
  if (const auto* flat = std::get_if<FlatTariff>(&tariff)) {
    out["type"] = "flat";
    out["f"] = flat->f;
  } else if (const auto* affine = std::get_if<AffineTariff>(&tariff)) {
    out["type"] = "affine";
    out["p"] = affine->p;
    out["f"] = affine->f;
    out["metric"] = to_string(affine->metric);
  } else {
    const auto& zone = std::get<ZoneTariff>(tariff);
    out["type"] = "zone";
    out["counting"] = counting_text(zone.mode);
    out["partition"] = partition_to_json(ptn, zone.partition);
    out["prices"] = zone.prices.values();
  }
  return out;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& f : kFixtures) names.emplace_back(f.name);
  return names;
}

std::string fixture_text(std::string_view name) {
  if (name == "fig1") name = "fig1-distance";
  if (name == "fig2") name = "fig2-fewer-zones";
  for (const auto& f : kFixtures) {
    if (f.name == name) return std::string(f.text);
  }
  throw InvalidInput("unknown fixture '" + std::string(name) + "'");
}

Fixture load_fixture(std::string_view name) {
  const Json doc = Json::parse(fixture_text(name));
  Fixture out;
  out.name = doc.at("name").get<std::string>();
  if (doc.contains("description")) {
    out.description = doc["description"].get<std::string>();
  }
  out.instance = parse_instance(doc);
  const Ptn& ptn = out.instance.ptn;
  if (doc.contains("expected")) {
    const Json& list = doc["expected"];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = at("expected", i);
      const Json& e = list[i];
      Expectation x;
      x.label = text(require(e, "label", where), at(where, "label"));
      x.task = text(require(e, "task", where), at(where, "task"));
      if (e.contains("config")) x.config = parse_config(e["config"], at(where, "config"));
      if (e.contains("metric")) x.metric = parse_metric(text(e["metric"], at(where, "metric")));
      if (e.contains("partition")) {
        x.partition = parse_partition(ptn, e["partition"], at(where, "partition"));
      }
      if (e.contains("prices")) x.prices = e["prices"].get<std::vector<double>>();
      if (e.contains("p")) x.p = number(e["p"], at(where, "p"));
      if (e.contains("f")) x.f = number(e["f"], at(where, "f"));
      const std::string compare =
          e.contains("compare") ? text(e["compare"], at(where, "compare")) : "eq";
      if (compare == "eq") {
        x.compare = Expectation::Compare::Equal;
        x.objective = number(require(e, "objective", where), at(where, "objective"));
      } else if (compare == "positive") {
        x.compare = Expectation::Compare::Positive;
      } else {
        fail(at(where, "compare"), "expected 'eq' or 'positive'");
      }
      if (e.contains("provenance")) x.provenance = text(e["provenance"], at(where, "provenance"));
      out.expected.push_back(std::move(x));
    }
  }
  return out;
}

LevelledDemand algorithm_trace_levels() {
  auto unit = [](std::initializer_list<double> rs) {
    std::vector<WeightedValue> level;
    for (double r : rs) level.push_back({r, 1});
    return level;
  };
  LevelledDemand levels;
  levels.levels = {unit({1}), unit({3, 3}), unit({1}),
                   unit({5}), unit({6, 6}), unit({4, 4, 4, 4})};
  return levels;
}

std::string format_price(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value == 0.0 ? 0.0 : value);
  return buffer;
}

Json report(const Ptn& ptn, std::span<const OdPair> demand,
            const Tariff& tariff, std::string_view variant) {
  Json out;
  out["variant"] = variant;
  out["tariff"] = tariff_to_json(ptn, tariff);
  const auto* zone = std::get_if<ZoneTariff>(&tariff);
  Json rows = Json::array();
  for (const auto& od : demand) {
    const double fare = price(ptn, tariff, od.path);
    Json row;
    row["origin"] = ptn.name(od.origin);
    row["destination"] = ptn.name(od.destination);
    row["passengers"] = od.passengers;
    row["reference_price"] = od.reference_price;
    if (zone) row["zones"] = zone_count(zone->partition, zone->mode, od.path);
    row["fare"] = fare;
    row["deviation"] = std::abs(od.reference_price - fare);
    rows.push_back(std::move(row));
  }
  out["objective"] = objective(ptn, tariff, demand);
  out["od"] = std::move(rows);
  return out;
}

std::string render_report(const Json& doc) {
  std::ostringstream out;
  out << "variant    " << doc.value("variant", "") << '\n';
  const Json& tariff = doc.at("tariff");
  const std::string type = tariff.at("type").get<std::string>();
  if (type == "flat") {
    out << "f          " << format_price(tariff.at("f").get<double>()) << '\n';
  } else if (type == "affine") {
    out << "p          " << format_price(tariff.at("p").get<double>()) << '\n'
        << "f          " << format_price(tariff.at("f").get<double>()) << '\n'
        << "metric     " << tariff.at("metric").get<std::string>() << '\n';
  } else {
    out << "counting   " << tariff.at("counting").get<std::string>() << '\n';
    out << "zones     ";
    for (const auto& [name, z] : tariff.at("partition").items()) {
      out << ' ' << name << ':' << z.get<int>();
    }
    out << "\nprices    ";
    for (const auto& p : tariff.at("prices")) out << ' ' << format_price(p.get<double>());
    out << '\n';
  }
  out << "objective  " << format_price(doc.at("objective").get<double>()) << "\n\n";

  const bool zones = type == "zone";
  out << std::left << std::setw(12) << "origin" << std::setw(12) << "destination"
      << std::right << std::setw(8) << "t" << std::setw(12) << "r";
  if (zones) out << std::setw(7) << "zones";
  out << std::setw(12) << "fare" << std::setw(12) << "deviation" << '\n';
  for (const auto& row : doc.at("od")) {
    out << std::left << std::setw(12) << row.at("origin").get<std::string>()
        << std::setw(12) << row.at("destination").get<std::string>() << std::right
        << std::setw(8) << row.at("passengers").get<std::int64_t>() << std::setw(12)
        << format_price(row.at("reference_price").get<double>());
    if (zones) out << std::setw(7) << row.at("zones").get<int>();
    out << std::setw(12) << format_price(row.at("fare").get<double>())
        << std::setw(12) << format_price(row.at("deviation").get<double>()) << '\n';
  }
  return out.str();
}

}  // namespace farekit
