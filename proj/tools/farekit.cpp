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

// Command-line front end. Exit status: 0 success, 1 invalid data or a
// failed check, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "farekit/core.hpp"
#include "farekit/distance.hpp"
#include "farekit/io.hpp"
#include "farekit/median.hpp"
#include "farekit/milp.hpp"
#include "farekit/reductions.hpp"
#include "farekit/zone_design.hpp"
#include "farekit/zone_pricing.hpp"

namespace {

using namespace farekit;

constexpr double kVerifyTolerance = 1e-7;

// Exit status 1 with a message, for failed checks.
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string instance;
  std::string out;
  std::string median = "lower";
  bool json = false;
};

struct DesignFlags {
  std::string counting;
  bool connected = false;
  int max_zones = 0;
  bool no_elongation = false;
  bool no_stopover = false;
};

void add_design_flags(CLI::App* cmd, DesignFlags& f) {
  cmd->add_option("--counting", f.counting, "multiple or single")
      ->check(CLI::IsMember({"multiple", "single"}));
  cmd->add_flag("--connected", f.connected, "require connected zones");
  cmd->add_option("--max-zones", f.max_zones, "maximum number of zones N")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-elongation", f.no_elongation,
                "require nondecreasing prices");
  cmd->add_flag("--no-stopover", f.no_stopover,
                "require the sufficient no-stopover conditions");
}

// Flags override the instance's config block.
DesignConfig design_config(const Instance& instance, const DesignFlags& f) {
  DesignConfig config = instance.config.value_or(DesignConfig{});
  if (!instance.config && f.max_zones == 0) {
    throw InvalidInput("--max-zones is required when the instance has no config");
  }
  if (!f.counting.empty()) config.mode = parse_counting(f.counting);
  if (f.connected) config.connected = true;
  if (f.max_zones > 0) config.max_zones = f.max_zones;
  if (f.no_elongation) config.require_no_elongation = true;
  if (f.no_stopover) config.require_no_stopover = true;
  validate_config(instance.ptn, config);
  return config;
}

Instance need_instance(const Globals& g) {
  if (g.instance.empty()) throw CLI::RequiredError("--instance");
  return resolve_instance(g.instance);
}

MedianPick median_pick(const Globals& g) {
  return g.median == "upper" ? MedianPick::Upper : MedianPick::Lower;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InvalidInput(path + ": cannot write file");
  out << content;
}

// Table on stdout (or JSON with --json); JSON to --out when given.
void emit(const Globals& g, const Json& doc) {
  const std::string json = doc.dump(2) + "\n";
  if (!g.out.empty()) write_text(g.out, json);
  std::cout << (g.json ? json : render_report(doc));
}

void verify_close(const char* what, double a, double b) {
  const double tol = kVerifyTolerance * std::max(1.0, std::abs(b));
  if (std::abs(a - b) > tol) {
    std::ostringstream msg;
    msg << std::setprecision(17) << what << ": " << a << " vs " << b;
    throw CheckFailed(msg.str());
  }
  std::cerr << "verified " << what << '\n';
}

void run_flat(const Globals& g) {
  const Instance in = need_instance(g);
  const auto sol = flat_design(std::span<const OdPair>(in.demand), median_pick(g));
  emit(g, report(in.ptn, in.demand, FlatTariff{sol.f}, "flat"));
}

void run_distance(const Globals& g, const std::string& metric_name, bool verify) {
  const Instance in = need_instance(g);
  const DistanceMetric metric = parse_metric(metric_name);
  const auto points = distance_points(in.ptn, in.demand, metric);
  const auto sol = affine_design(points);
  if (verify) {
    verify_close("candidate set vs LP", sol.objective,
                 affine_design_lp(points).objective);
  }
  emit(g, report(in.ptn, in.demand, AffineTariff{sol.p, sol.f, metric},
                 std::string("affine-") + std::string(to_string(metric))));
}

void run_zone_prices(const Globals& g, const std::string& partition_file,
                     const std::string& counting, bool monotone,
                     bool no_stopover, bool verify) {
  const Instance in = need_instance(g);
  const CountingMode mode = parse_counting(counting);
  const Json doc = read_json_file(partition_file);
  const Json& body = doc.is_object() && doc.contains("partition") ? doc["partition"] : doc;
  const ZonePartition partition = parse_partition(in.ptn, body, partition_file);
  const auto levels = build_levels(partition, mode, in.demand);
  PricingResult result;
  if (no_stopover) {
    result = price_no_stopover(levels, mode, monotone);
  } else if (monotone) {
    result = price_monotone(levels);
    if (verify) {
      verify_close("merge algorithm vs LP", result.objective,
                   price_monotone_lp(levels).objective);
    }
  } else {
    result = price_unrestricted(levels);
  }
  emit(g, report(in.ptn, in.demand, ZoneTariff{partition, mode, result.prices},
                 "zone-prices"));
}

void run_zone_design(const Globals& g, const DesignFlags& flags, int threads,
                     bool verify) {
  const Instance in = need_instance(g);
  const DesignConfig config = design_config(in, flags);
  const auto result = solve_exact(in.ptn, in.demand, config, threads);
  if (verify) {
    const auto model = build_milp(in.ptn, in.demand, config);
    const auto check = check_assignment(model, in.ptn, in.demand,
                                        result.partition, result.prices);
    if (!check.feasible) {
      throw CheckFailed("optimum violates MILP row " + check.violations.front().row);
    }
    verify_close("MILP objective", check.objective, result.objective);
  }
  Json doc = report(in.ptn, in.demand,
                    ZoneTariff{result.partition, config.mode, result.prices},
                    result.variant);
  doc["config"] = config_to_json(config);
  emit(g, doc);
}

void run_export_milp(const Globals& g, const DesignFlags& flags) {
  const Instance in = need_instance(g);
  const DesignConfig config = design_config(in, flags);
  const std::string text = to_lp_string(build_milp(in.ptn, in.demand, config));
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text(g.out, text);
  }
}

const ZoneTariff& need_zone_tariff(const Tariff& tariff) {
  const auto* zone = std::get_if<ZoneTariff>(&tariff);
  if (!zone) throw InvalidInput("check needs a zone tariff");
  return *zone;
}

void run_check(const Globals& g, const DesignFlags& flags,
               const std::string& tariff_file) {
  const Instance in = need_instance(g);
  DesignFlags f = flags;
  const Tariff tariff = parse_tariff(in.ptn, read_json_file(tariff_file));
  const ZoneTariff& zone = need_zone_tariff(tariff);
  if (f.counting.empty()) f.counting = std::string(to_string(zone.mode));
  if (f.max_zones == 0 && !in.config) f.max_zones = zone.partition.num_zones();
  const DesignConfig config = design_config(in, f);
  if (config.mode != zone.mode) {
    throw InvalidInput("--counting differs from the tariff's counting mode");
  }

  Json doc;
  doc["config"] = config_to_json(config);
  doc["zones"] = zone.partition.num_zones();
  doc["zones_within_limit"] = zone.partition.num_zones() <= config.max_zones;
  doc["connected"] = is_connected_partition(in.ptn, zone.partition);
  doc["monotone"] = check_monotone(zone.prices);
  doc["no_stopover_condition"] = check_no_stopover_condition(zone.prices, zone.mode);
  doc["objective"] = objective(in.ptn, tariff, in.demand);

  bool ok = doc["zones_within_limit"].get<bool>();
  if (config.connected && !doc["connected"].get<bool>()) ok = false;
  if (config.require_no_elongation && !doc["monotone"].get<bool>()) ok = false;
  if (config.require_no_stopover && !doc["no_stopover_condition"].get<bool>()) {
    ok = false;
  }
  if (doc["zones_within_limit"].get<bool>()) {
    const auto model = build_milp(in.ptn, in.demand, config);
    const auto check =
        check_assignment(model, in.ptn, in.demand, zone.partition, zone.prices);
    Json milp;
    milp["feasible"] = check.feasible;
    milp["objective"] = check.objective;
    Json rows = Json::array();
    for (const auto& v : check.violations) {
      rows.push_back({{"row", v.row}, {"group", v.group},
                      {"activity", v.activity}, {"rhs", v.rhs}});
    }
    milp["violations"] = std::move(rows);
    doc["milp"] = std::move(milp);
    ok = ok && check.feasible;
  }
  doc["ok"] = ok;
  const std::string json = doc.dump(2) + "\n";
  if (!g.out.empty()) write_text(g.out, json);
  std::cout << json;
  if (!ok) throw CheckFailed("tariff fails the configured checks");
}

void run_eval(const Globals& g, const std::string& tariff_file) {
  const Instance in = need_instance(g);
  const Tariff tariff = parse_tariff(in.ptn, read_json_file(tariff_file));
  emit(g, report(in.ptn, in.demand, tariff, "eval"));
}

std::vector<std::pair<StationId, StationId>> parse_pairs(const Ptn& ptn,
                                                         const std::string& text) {
  std::vector<std::pair<StationId, StationId>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw InvalidInput("--pairs: expected a:b, got '" + item + "'");
    }
    const auto a = ptn.find(item.substr(0, colon));
    const auto b = ptn.find(item.substr(colon + 1));
    if (!a || !b) throw InvalidInput("--pairs: unknown station in '" + item + "'");
    out.emplace_back(*a, *b);
  }
  return out;
}

void emit_reduction(const Globals& g, const ReductionInstance& r) {
  Instance inst{"", r.ptn, r.demand, r.config};
  Json doc = instance_to_json(inst);
  doc["threshold"] = r.threshold;
  const std::string json = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << json;
  } else {
    write_text(g.out, json);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fare structure design: flat, affine distance and zone tariffs."};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--instance", g.instance, "instance file or fixture name");
  app.add_option("--out", g.out, "write the JSON result (or LP file) here");
  app.add_option("--median", g.median, "weighted median to report: lower or upper")
      ->check(CLI::IsMember({"lower", "upper"}));
  app.add_flag("--json", g.json, "print JSON instead of a table");

  auto* flat = app.add_subcommand("flat", "optimal flat tariff");

  auto* distance = app.add_subcommand("distance", "optimal affine distance tariff");
  std::string metric = "network";
  bool distance_verify = false;
  distance->add_option("--metric", metric, "network or beeline")
      ->check(CLI::IsMember({"network", "beeline"}));
  distance->add_flag("--verify", distance_verify, "cross-check against the LP");

  auto* prices = app.add_subcommand("zone-prices", "optimal prices for a fixed partition");
  std::string partition_file, counting = "multiple";
  bool monotone = false, no_stopover = false, prices_verify = false;
  prices->add_option("--partition", partition_file, "partition JSON file")->required();
  prices->add_option("--counting", counting, "multiple or single")
      ->check(CLI::IsMember({"multiple", "single"}));
  prices->add_flag("--monotone", monotone, "require nondecreasing prices");
  prices->add_flag("--no-stopover", no_stopover, "require the no-stopover conditions");
  prices->add_flag("--verify", prices_verify, "cross-check the merge algorithm");

  auto* design = app.add_subcommand("zone-design", "exact zone tariff design");
  DesignFlags design_flags;
  int threads = 1;
  bool design_verify = false;
  add_design_flags(design, design_flags);
  design->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  design->add_flag("--verify", design_verify, "check the optimum against the MILP");

  auto* export_milp = app.add_subcommand("export-milp", "write the MILP as an LP file");
  DesignFlags export_flags;
  add_design_flags(export_milp, export_flags);

  auto* check = app.add_subcommand("check", "check a zone tariff against properties and the MILP");
  DesignFlags check_flags;
  std::string check_tariff;
  add_design_flags(check, check_flags);
  check->add_option("--tariff", check_tariff, "zone tariff JSON file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a tariff");
  std::string eval_tariff;
  eval->add_option("--tariff", eval_tariff, "tariff JSON file")->required();

  auto* gen = app.add_subcommand("gen-reduction", "build instances from hard graph problems");
  gen->require_subcommand(1);
  std::string graph_file, pairs_text, center, gen_counting = "multiple";
  int min_kept = 0, budget = 0;
  auto* bipartite = gen->add_subcommand("bipartite", "from a bipartite subgraph instance");
  bipartite->add_option("--graph", graph_file, "graph JSON file")->required();
  bipartite->add_option("--min-kept", min_kept, "Q', edges to keep")->required();
  bipartite->add_option("--counting", gen_counting, "multiple or single")
      ->check(CLI::IsMember({"multiple", "single"}));
  auto* multicut = gen->add_subcommand("multicut", "from a multicut-on-a-star instance");
  multicut->add_option("--graph", graph_file, "star graph JSON file")->required();
  multicut->add_option("--pairs", pairs_text, "terminal pairs a:b,c:d")->required();
  multicut->add_option("--budget", budget, "Q, edges to delete")->required();
  multicut->add_option("--center", center, "center station");
  multicut->add_option("--counting", gen_counting, "multiple or single")
      ->check(CLI::IsMember({"multiple", "single"}));

  for (auto* sub : {flat, distance, prices, design, export_milp, check, eval, gen}) {
    sub->fallthrough();
  }
  bipartite->fallthrough();
  multicut->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*flat) run_flat(g);
    if (*distance) run_distance(g, metric, distance_verify);
    if (*prices) {
      run_zone_prices(g, partition_file, counting, monotone, no_stopover, prices_verify);
    }
    if (*design) run_zone_design(g, design_flags, threads, design_verify);
    if (*export_milp) run_export_milp(g, export_flags);
    if (*check) run_check(g, check_flags, check_tariff);
    if (*eval) run_eval(g, eval_tariff);
    if (*bipartite) {
      const Ptn graph = parse_graph(read_json_file(graph_file));
      emit_reduction(g, generate_bipartite_reduction(graph, min_kept,
                                                     parse_counting(gen_counting)));
    }
    if (*multicut) {
      const Ptn star = parse_graph(read_json_file(graph_file));
      std::optional<StationId> c;
      if (!center.empty()) {
        c = star.find(center);
        if (!c) throw InvalidInput("--center: unknown station '" + center + "'");
      }
      emit_reduction(g, generate_multicut_reduction(star, parse_pairs(star, pairs_text),
                                                    budget, c,
                                                    parse_counting(gen_counting)));
    }
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
