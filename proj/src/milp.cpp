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

#include "farekit/milp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace farekit {

std::size_t MilpModel::add_variable(MilpVariable variable) {
  const std::size_t id = variables_.size();
  if (!by_name_.emplace(variable.name, id).second) {
    throw InvalidInput("duplicate variable name " + variable.name);
  }
  variables_.push_back(std::move(variable));
  return id;
}

void MilpModel::add_row(MilpRow row) { rows_.push_back(std::move(row)); }

std::size_t MilpModel::index(const std::string& name) const {
  return by_name_.at(name);
}

std::size_t MilpModel::group_size(const std::string& group) const {
  return static_cast<std::size_t>(
      std::count_if(rows_.begin(), rows_.end(),
                    [&](const MilpRow& r) { return r.group == group; }));
}

namespace {

std::vector<std::string> station_labels(const Ptn& ptn) {
  const auto& names = ptn.names();
  const bool usable = std::all_of(names.begin(), names.end(), [](const auto& s) {
    return !s.empty() && s != "0" &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) {
             return std::isalnum(c) != 0;
           });
  });
  std::vector<std::string> out;
  out.reserve(names.size());
  for (std::size_t v = 0; v < names.size(); ++v) {
    out.push_back(usable ? names[v] : "s" + std::to_string(v));
  }
  return out;
}

// Merges repeated variables and drops zero coefficients.
MilpTerms merge_terms(std::initializer_list<std::pair<std::size_t, double>> in) {
  std::map<std::size_t, double> sum;
  for (const auto& [v, c] : in) sum[v] += c;
  MilpTerms out;
  for (const auto& [v, c] : sum) {
    if (c != 0.0) out.emplace_back(v, c);
  }
  return out;
}

MilpTerms merge_terms(const MilpTerms& in) {
  std::map<std::size_t, double> sum;
  for (const auto& [v, c] : in) sum[v] += c;
  MilpTerms out;
  for (const auto& [v, c] : sum) {
    if (c != 0.0) out.emplace_back(v, c);
  }
  return out;
}

std::vector<StationId> distinct_nodes(const Path& path) {
  std::vector<StationId> nodes = path.nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::string num(std::size_t i) { return std::to_string(i); }

}  // namespace

int milp_zone_bound(std::span<const OdPair> demand, CountingMode mode,
                    int max_zones) {
  std::size_t longest = 1;
  for (const auto& od : demand) {
    longest = std::max(longest, mode == CountingMode::Multiple
                                    ? od.path.nodes.size()
                                    : distinct_nodes(od.path).size());
  }
  const int bound = static_cast<int>(longest);
  return mode == CountingMode::Multiple ? bound : std::min(max_zones, bound);
}

MilpModel build_milp(const Ptn& ptn, std::span<const OdPair> demand,
                     const DesignConfig& config) {
  validate_config(ptn, config);
  validate_demand(ptn, demand);
  if (demand.empty()) throw InvalidInput("zone design needs demand");

  MilpModel model;
  model.config = config;
  model.K = milp_zone_bound(demand, config.mode, config.max_zones);
  model.r_bar = max_reference_price(demand);
  model.station_labels = station_labels(ptn);
  model.title = variant_name(config);

  const auto& label = model.station_labels;
  const std::size_t n = ptn.num_stations();
  const int N = config.max_zones;
  const int K = model.K;
  const double big_v = static_cast<double>(n);
  const double r_bar = model.r_bar;
  const bool multiple = config.mode == CountingMode::Multiple;

  auto binary = [&](std::string name) {
    return model.add_variable({std::move(name), true, 0.0, 1.0});
  };
  auto continuous = [&](std::string name, double lo, double hi) {
    return model.add_variable({std::move(name), false, lo, hi});
  };

  // x[v][z - 1]
  std::vector<std::vector<std::size_t>> x(n);
  for (StationId v = 0; v < n; ++v) {
    for (int z = 1; z <= N; ++z) {
      x[v].push_back(binary("x_" + label[v] + "_" + std::to_string(z)));
    }
  }
  auto X = [&](StationId v, int z) { return x[v][static_cast<std::size_t>(z - 1)]; };

  std::map<std::pair<StationId, StationId>, std::size_t> flow;
  std::vector<std::size_t> source_flow, source_pick;
  if (config.connected) {
    for (const auto& e : ptn.edges()) {
      flow[{e.u, e.v}] = continuous("f_" + label[e.u] + "_" + label[e.v], 0.0, kInfinity);
      flow[{e.v, e.u}] = continuous("f_" + label[e.v] + "_" + label[e.u], 0.0, kInfinity);
    }
    for (StationId v = 0; v < n; ++v) {
      source_flow.push_back(continuous("f_0_" + label[v], 0.0, kInfinity));
    }
    for (StationId v = 0; v < n; ++v) source_pick.push_back(binary("s_" + label[v]));
  }

  std::vector<std::size_t> border;  // by edge index
  std::vector<std::vector<std::size_t>> touch;  // [d][z - 1]
  if (multiple) {
    for (const auto& e : ptn.edges()) {
      border.push_back(binary("b_" + label[e.u] + "_" + label[e.v]));
    }
  } else {
    touch.resize(demand.size());
    for (std::size_t d = 0; d < demand.size(); ++d) {
      for (int z = 1; z <= N; ++z) {
        touch[d].push_back(binary("bd_" + num(d + 1) + "_" + std::to_string(z)));
      }
    }
  }

  std::vector<std::vector<std::size_t>> c(demand.size());
  for (std::size_t d = 0; d < demand.size(); ++d) {
    for (int k = 1; k <= K; ++k) {
      c[d].push_back(binary("c_" + num(d + 1) + "_" + std::to_string(k)));
    }
  }
  auto C = [&](std::size_t d, int k) { return c[d][static_cast<std::size_t>(k - 1)]; };

  std::vector<std::size_t> p;
  for (int k = 1; k <= K; ++k) {
    p.push_back(continuous("p_" + std::to_string(k), 0.0, r_bar));
  }
  auto P = [&](int k) { return p[static_cast<std::size_t>(k - 1)]; };

  std::vector<std::size_t> pi, y;
  for (std::size_t d = 0; d < demand.size(); ++d) {
    pi.push_back(continuous("pi_" + num(d + 1), -kInfinity, kInfinity));
  }
  for (std::size_t d = 0; d < demand.size(); ++d) {
    y.push_back(continuous("y_" + num(d + 1), -kInfinity, kInfinity));
  }

  MilpTerms objective;
  for (std::size_t d = 0; d < demand.size(); ++d) {
    objective.emplace_back(y[d], static_cast<double>(demand[d].passengers));
  }
  model.set_objective(std::move(objective));

  auto row = [&](std::string name, const char* group, MilpTerms terms,
                 lp::Relation rel, double rhs) {
    model.add_row({std::move(name), group, std::move(terms), rel, rhs});
  };
  using lp::Relation;

  // Objective linearization.
  for (std::size_t d = 0; d < demand.size(); ++d) {
    const double r = demand[d].reference_price;
    row("dev_hi_" + num(d + 1), kGroupObjective,
        merge_terms({{pi[d], 1.0}, {y[d], -1.0}}), Relation::LessEqual, r);
    row("dev_lo_" + num(d + 1), kGroupObjective,
        merge_terms({{pi[d], -1.0}, {y[d], -1.0}}), Relation::LessEqual, -r);
  }

  // Station assignment.
  for (StationId v = 0; v < n; ++v) {
    MilpTerms terms;
    for (int z = 1; z <= N; ++z) terms.emplace_back(X(v, z), 1.0);
    row("assign_" + label[v], kGroupAssignment, std::move(terms),
        Relation::Equal, 1.0);
  }

  // Connectivity by single-commodity flow. Flow variables exist only on
  // edge arcs, so the zero-flow rows for non-edges are implicit.
  if (config.connected) {
    for (StationId v = 0; v < n; ++v) {
      row("src_" + label[v], kGroupConnectivity,
          merge_terms({{source_flow[v], 1.0}, {source_pick[v], -big_v}}),
          Relation::LessEqual, 0.0);
    }
    for (StationId u = 0; u < n; ++u) {
      for (StationId v = u + 1; v < n; ++v) {
        for (int z = 1; z <= N; ++z) {
          row("root_" + label[u] + "_" + label[v] + "_" + std::to_string(z),
              kGroupConnectivity,
              merge_terms({{source_pick[u], 1.0}, {source_pick[v], 1.0},
                           {X(u, z), 1.0}, {X(v, z), 1.0}}),
              Relation::LessEqual, 3.0);
        }
      }
    }
    for (const auto& e : ptn.edges()) {
      for (const auto& [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        for (int z = 1; z <= N; ++z) {
          row("arc_" + label[a] + "_" + label[b] + "_" + std::to_string(z),
              kGroupConnectivity,
              merge_terms({{flow.at({a, b}), 1.0}, {X(a, z), -big_v},
                           {X(b, z), big_v}}),
              Relation::LessEqual, big_v);
        }
      }
    }
    for (StationId v = 0; v < n; ++v) {
      MilpTerms terms{{source_flow[v], 1.0}};
      for (StationId w : ptn.neighbors(v)) {
        terms.emplace_back(flow.at({w, v}), 1.0);
        terms.emplace_back(flow.at({v, w}), -1.0);
      }
      row("flow_" + label[v], kGroupConnectivity, merge_terms(terms),
          Relation::Equal, 1.0);
    }
  }

  // Zone counting.
  if (multiple) {
    for (std::size_t e = 0; e < ptn.num_edges(); ++e) {
      const auto& edge = ptn.edges()[e];
      const std::string tag = label[edge.u] + "_" + label[edge.v];
      for (int z = 1; z <= N; ++z) {
        row("cross_" + tag + "_" + std::to_string(z), kGroupCounting,
            merge_terms({{X(edge.u, z), 1.0}, {X(edge.v, z), -1.0},
                         {border[e], -1.0}}),
            Relation::LessEqual, 0.0);
      }
      for (int z = 1; z <= N; ++z) {
        row("same_" + tag + "_" + std::to_string(z), kGroupCounting,
            merge_terms({{border[e], 1.0}, {X(edge.u, z), 1.0},
                         {X(edge.v, z), 1.0}}),
            Relation::LessEqual, 2.0);
      }
    }
  } else {
    for (std::size_t d = 0; d < demand.size(); ++d) {
      const auto nodes = distinct_nodes(demand[d].path);
      for (int z = 1; z <= N; ++z) {
        MilpTerms hi, lo;
        for (StationId v : nodes) {
          hi.emplace_back(X(v, z), 1.0);
          lo.emplace_back(X(v, z), -1.0);
        }
        const std::size_t bd = touch[d][static_cast<std::size_t>(z - 1)];
        hi.emplace_back(bd, -big_v);
        lo.emplace_back(bd, 1.0);
        const std::string tag = num(d + 1) + "_" + std::to_string(z);
        row("touch_hi_" + tag, kGroupCounting, merge_terms(hi),
            Relation::LessEqual, 0.0);
        row("touch_lo_" + tag, kGroupCounting, merge_terms(lo),
            Relation::LessEqual, 0.0);
      }
    }
  }
  for (std::size_t d = 0; d < demand.size(); ++d) {
    MilpTerms terms;
    for (int k = 1; k <= K; ++k) terms.emplace_back(C(d, k), 1.0);
    row("pick_" + num(d + 1), kGroupCounting, std::move(terms),
        Relation::Equal, 1.0);
  }
  for (std::size_t d = 0; d < demand.size(); ++d) {
    MilpTerms terms;
    if (multiple) {
      const auto& nodes = demand[d].path.nodes;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        terms.emplace_back(border[*ptn.edge_index(nodes[i], nodes[i + 1])], 1.0);
      }
      for (int k = 1; k <= K; ++k) terms.emplace_back(C(d, k), -(k - 1.0));
    } else {
      for (int z = 1; z <= N; ++z) {
        terms.emplace_back(touch[d][static_cast<std::size_t>(z - 1)], 1.0);
      }
      for (int k = 1; k <= K; ++k) {
        terms.emplace_back(C(d, k), -static_cast<double>(k));
      }
    }
    row("zones_" + num(d + 1), kGroupCounting, merge_terms(terms),
        Relation::Equal, 0.0);
  }

  // Price assignment with big-M r_bar.
  for (std::size_t d = 0; d < demand.size(); ++d) {
    for (int k = 1; k <= K; ++k) {
      const std::string tag = num(d + 1) + "_" + std::to_string(k);
      row("fare_hi_" + tag, kGroupPrice,
          merge_terms({{pi[d], 1.0}, {P(k), -1.0}, {C(d, k), r_bar}}),
          Relation::LessEqual, r_bar);
      row("fare_lo_" + tag, kGroupPrice,
          merge_terms({{P(k), 1.0}, {pi[d], -1.0}, {C(d, k), r_bar}}),
          Relation::LessEqual, r_bar);
    }
  }

  if (config.require_no_elongation) {
    for (int k = 1; k < K; ++k) {
      row("mono_" + std::to_string(k), kGroupMonotone,
          merge_terms({{P(k), 1.0}, {P(k + 1), -1.0}}), Relation::LessEqual,
          0.0);
    }
  }

  if (config.require_no_stopover) {
    if (multiple) {
      for (int k = 3; k <= K; ++k) {
        for (int i = 2; i <= (k + 1) / 2; ++i) {
          row("stop_" + std::to_string(k) + "_" + std::to_string(i),
              kGroupStopover,
              merge_terms({{P(k), 1.0}, {P(i), -1.0}, {P(k - i + 1), -1.0}}),
              Relation::LessEqual, 0.0);
        }
      }
    } else {
      for (int k = 1; k <= K; ++k) {
        for (int i1 = 1; i1 <= k; ++i1) {
          for (int i2 = 1; i2 <= k; ++i2) {
            if (i1 + i2 < k + 1) continue;
            row("stop_" + std::to_string(k) + "_" + std::to_string(i1) + "_" +
                    std::to_string(i2),
                kGroupStopover,
                merge_terms({{P(k), 1.0}, {P(i1), -1.0}, {P(i2), -1.0}}),
                Relation::LessEqual, 0.0);
          }
        }
      }
    }
  }
  return model;
}

std::size_t stopover_rows_multiple(int K) {
  std::size_t rows = 0;
  for (int k = 3; k <= K; ++k) rows += static_cast<std::size_t>((k + 1) / 2 - 1);
  return rows;
}

std::size_t stopover_rows_single(int K) {
  if (K < 1) return 0;
  const auto k = static_cast<std::size_t>(K);
  return k * (k + 1) * (k + 2) / 6;
}

std::map<std::string, std::size_t> expected_group_sizes(
    std::size_t num_stations, std::size_t num_edges, std::size_t num_od,
    const DesignConfig& config, int K) {
  const std::size_t V = num_stations;
  const std::size_t E = num_edges;
  const std::size_t D = num_od;
  const auto N = static_cast<std::size_t>(config.max_zones);
  const auto k = static_cast<std::size_t>(K);
  std::map<std::string, std::size_t> out;
  out[kGroupObjective] = 2 * D;
  out[kGroupAssignment] = V;
  out[kGroupConnectivity] =
      config.connected ? V + N * V * (V - 1) / 2 + 2 * E * N + V : 0;
  out[kGroupCounting] = config.mode == CountingMode::Multiple
                            ? 2 * E * N + 2 * D
                            : 2 * D * N + 2 * D;
  out[kGroupPrice] = 2 * D * k;
  out[kGroupMonotone] = config.require_no_elongation && k > 0 ? k - 1 : 0;
  out[kGroupStopover] = 0;
  if (config.require_no_stopover) {
    out[kGroupStopover] = config.mode == CountingMode::Multiple
                              ? stopover_rows_multiple(K)
                              : stopover_rows_single(K);
  }
  return out;
}

namespace {

// Price for k zones used to fill the model's p variables. Levels the list
// does not cover repeat its last price, except with the multiple-counting
// stopover rows and no monotonicity: there a repeated price can break rows
// whose index pairs lie inside the list (for example (1, 1, 0, 1) at k = 4,
// i = 2), so the unused levels are set to 0, which satisfies every row.
double extended_price(const MilpModel& model, const PriceList& prices, int k) {
  if (static_cast<std::size_t>(k) <= prices.size()) {
    return prices.values()[static_cast<std::size_t>(k - 1)];
  }
  const auto& cfg = model.config;
  if (cfg.mode == CountingMode::Multiple && cfg.require_no_stopover &&
      !cfg.require_no_elongation) {
    return 0.0;
  }
  return prices.values().back();
}

bool violates(double activity, lp::Relation rel, double rhs) {
  const double tol = lp::kReportTolerance * std::max(1.0, std::abs(rhs));
  switch (rel) {
    case lp::Relation::LessEqual:
      return activity > rhs + tol;
    case lp::Relation::GreaterEqual:
      return activity < rhs - tol;
    case lp::Relation::Equal:
      return std::abs(activity - rhs) > tol;
  }
  return false;
}

}  // namespace

CheckReport check_assignment(const MilpModel& model, const Ptn& ptn,
                             std::span<const OdPair> demand,
                             const ZonePartition& partition,
                             const PriceList& prices) {
  const auto& cfg = model.config;
  if (partition.num_stations() != ptn.num_stations() ||
      !partition.is_complete()) {
    throw InvalidInput("partition must assign every station");
  }
  if (partition.num_zones() > cfg.max_zones) {
    throw InvalidInput("partition uses more zones than the model allows");
  }
  if (prices.size() == 0) throw InvalidInput("price list is empty");

  const auto& label = model.station_labels;
  const std::size_t n = ptn.num_stations();
  CheckReport report;
  report.values.assign(model.variables().size(), 0.0);
  auto set = [&](const std::string& name, double value) {
    report.values[model.index(name)] = value;
  };

  for (StationId v = 0; v < n; ++v) {
    set("x_" + label[v] + "_" + std::to_string(partition.zone(v)), 1.0);
  }

  if (cfg.connected) {
    // Spanning tree of every zone component, flow = subtree size.
    std::vector<char> seen(n, 0);
    for (StationId root = 0; root < n; ++root) {
      if (seen[root]) continue;
      const int zone = partition.zone(root);
      std::vector<StationId> order{root};
      std::vector<StationId> parent(n, n);
      seen[root] = 1;
      for (std::size_t head = 0; head < order.size(); ++head) {
        for (StationId w : ptn.neighbors(order[head])) {
          if (!seen[w] && partition.zone(w) == zone) {
            seen[w] = 1;
            parent[w] = order[head];
            order.push_back(w);
          }
        }
      }
      std::vector<double> size(n, 1.0);
      for (std::size_t i = order.size(); i-- > 1;) {
        const StationId v = order[i];
        size[parent[v]] += size[v];
        set("f_" + label[parent[v]] + "_" + label[v], size[v]);
      }
      set("s_" + label[root], 1.0);
      set("f_0_" + label[root], size[root]);
    }
  }

  if (cfg.mode == CountingMode::Multiple) {
    for (const auto& e : ptn.edges()) {
      if (partition.zone(e.u) != partition.zone(e.v)) {
        set("b_" + label[e.u] + "_" + label[e.v], 1.0);
      }
    }
  } else {
    for (std::size_t d = 0; d < demand.size(); ++d) {
      std::set<int> zones;
      for (StationId v : demand[d].path.nodes) zones.insert(partition.zone(v));
      for (int z : zones) {
        set("bd_" + num(d + 1) + "_" + std::to_string(z), 1.0);
      }
    }
  }

  for (int k = 1; k <= model.K; ++k) {
    set("p_" + std::to_string(k), extended_price(model, prices, k));
  }

  for (std::size_t d = 0; d < demand.size(); ++d) {
    const auto& od = demand[d];
    const int sigma = zone_count(partition, cfg.mode, od.path);
    if (sigma <= model.K) set("c_" + num(d + 1) + "_" + std::to_string(sigma), 1.0);
    const double fare = prices.at(static_cast<std::size_t>(sigma));
    const double deviation = std::abs(od.reference_price - fare);
    set("pi_" + num(d + 1), fare);
    set("y_" + num(d + 1), deviation);
    report.objective += static_cast<double>(od.passengers) * deviation;
  }

  for (const auto& row : model.rows()) {
    double activity = 0.0;
    for (const auto& [v, coef] : row.terms) activity += coef * report.values[v];
    if (violates(activity, row.relation, row.rhs)) {
      report.violations.push_back({row.name, row.group, activity, row.rhs});
    }
  }
  for (std::size_t i = 0; i < model.variables().size(); ++i) {
    const auto& var = model.variables()[i];
    const double value = report.values[i];
    if (violates(value, lp::Relation::GreaterEqual, var.lower) ||
        violates(value, lp::Relation::LessEqual, var.upper)) {
      report.violations.push_back({"bound " + var.name, "bounds", value,
                                   value < var.lower ? var.lower : var.upper});
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

namespace {

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_terms(std::ostream& out, const MilpModel& model,
                 const MilpTerms& terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  bool first = true;
  for (const auto& [v, coef] : terms) {
    const auto& name = model.variables()[v].name;
    if (first) {
      out << ' ' << format_number(coef) << ' ' << name;
      first = false;
    } else {
      out << (coef < 0 ? " - " : " + ") << format_number(std::abs(coef)) << ' '
          << name;
    }
  }
}

const char* relation_text(lp::Relation rel) {
  switch (rel) {
    case lp::Relation::LessEqual:
      return "<=";
    case lp::Relation::GreaterEqual:
      return ">=";
    case lp::Relation::Equal:
      return "=";
  }
  return "=";
}

}  // namespace

void write_lp_file(std::ostream& out, const MilpModel& model) {
  if (!model.title.empty()) out << "\\ " << model.title << '\n';
  out << "Minimize\n obj:";
  write_terms(out, model, model.objective());
  out << "\nSubject To\n";
  for (const auto& row : model.rows()) {
    out << ' ' << row.name << ':';
    write_terms(out, model, row.terms);
    out << ' ' << relation_text(row.relation) << ' ' << format_number(row.rhs)
        << '\n';
  }
  out << "Bounds\n";
  for (const auto& var : model.variables()) {
    out << ' ';
    const bool lower_finite = std::isfinite(var.lower);
    const bool upper_finite = std::isfinite(var.upper);
    if (!lower_finite && !upper_finite) {
      out << var.name << " free";
    } else if (!upper_finite) {
      out << var.name << " >= " << format_number(var.lower);
    } else {
      out << format_number(var.lower) << " <= " << var.name
          << " <= " << format_number(var.upper);
    }
    out << '\n';
  }
  out << "Binaries\n";
  for (const auto& var : model.variables()) {
    if (var.binary) out << ' ' << var.name << '\n';
  }
  out << "End\n";
}

std::string to_lp_string(const MilpModel& model) {
  std::ostringstream out;
  write_lp_file(out, model);
  return out.str();
}

namespace {

enum class Section { None, Objective, Rows, Bounds, Binaries, End };

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

class LpParser {
 public:
  explicit LpParser(std::string_view text) : text_(text) {}

  MilpModel parse() {
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++line_;
      handle(trim(text_.substr(start, end - start)));
      start = end + 1;
    }
    if (section_ != Section::End) fail("missing End");
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInput("LP file line " + std::to_string(line_) + ": " + what);
  }

  void handle(std::string_view line) {
    if (line.empty()) return;
    if (line.front() == '\\') {
      if (title_.empty()) title_ = std::string(trim(line.substr(1)));
      return;
    }
    const std::string key = lower_case(line);
    if (key == "minimize") return enter(Section::Objective);
    if (key == "subject to") return enter(Section::Rows);
    if (key == "bounds") return enter(Section::Bounds);
    if (key == "binaries") return enter(Section::Binaries);
    if (key == "end") return enter(Section::End);
    switch (section_) {
      case Section::Objective:
        objective_ = parse_expression(after_label(line, nullptr));
        return;
      case Section::Rows:
        parse_row(line);
        return;
      case Section::Bounds:
        parse_bound(line);
        return;
      case Section::Binaries:
        for (const auto& name : split_words(line)) binaries_.push_back(name);
        return;
      default:
        fail("unexpected text outside a section");
    }
  }

  void enter(Section next) {
    if (next <= section_) fail("section out of order");
    section_ = next;
  }

  std::string_view after_label(std::string_view line, std::string* label) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      if (label) fail("row without a name");
      return line;
    }
    if (label) *label = std::string(trim(line.substr(0, colon)));
    return line.substr(colon + 1);
  }

  static bool parse_double(std::string_view s, double& out) {
    if (s == "+inf" || s == "inf" || s == "+infinity" || s == "infinity") {
      out = kInfinity;
      return true;
    }
    if (s == "-inf" || s == "-infinity") {
      out = -kInfinity;
      return true;
    }
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto result = std::from_chars(s.data(), s.data() + s.size(), out);
    return result.ec == std::errc() && result.ptr == s.data() + s.size();
  }

  std::vector<std::pair<std::string, double>> parse_expression(
      std::string_view text) {
    std::vector<std::pair<std::string, double>> terms;
    double sign = 1.0;
    double coef = 1.0;
    bool have_coef = false;
    for (const auto& word : split_words(text)) {
      if (word == "+") continue;
      if (word == "-") {
        sign = -sign;
        continue;
      }
      double value = 0.0;
      if (parse_double(word, value)) {
        if (have_coef) fail("two coefficients in a row");
        coef = value;
        have_coef = true;
        continue;
      }
      terms.emplace_back(word, sign * coef);
      sign = 1.0;
      coef = 1.0;
      have_coef = false;
    }
    if (have_coef && !(coef == 0.0 && terms.empty())) {
      fail("dangling coefficient");
    }
    return terms;
  }

  void parse_row(std::string_view line) {
    std::string name;
    const auto body = after_label(line, &name);
    struct Op {
      const char* text;
      lp::Relation rel;
    };
    for (const Op op : {Op{"<=", lp::Relation::LessEqual},
                        Op{">=", lp::Relation::GreaterEqual},
                        Op{"=", lp::Relation::Equal}}) {
      const auto at = body.find(op.text);
      if (at == std::string_view::npos) continue;
      double rhs = 0.0;
      if (!parse_double(trim(body.substr(at + std::string_view(op.text).size())),
                        rhs)) {
        fail("bad right-hand side");
      }
      rows_.push_back({name, parse_expression(body.substr(0, at)), op.rel, rhs});
      return;
    }
    fail("row without a relation");
  }

  void parse_bound(std::string_view line) {
    const auto words = split_words(line);
    Bound b;
    double value = 0.0;
    if (words.size() == 2 && lower_case(words[1]) == "free") {
      b = {words[0], -kInfinity, kInfinity};
    } else if (words.size() == 3 && words[1] == ">=" &&
               parse_double(words[2], value)) {
      b = {words[0], value, kInfinity};
    } else if (words.size() == 3 && words[1] == "<=" &&
               parse_double(words[2], value)) {
      b = {words[0], 0.0, value};
    } else if (words.size() == 5 && words[1] == "<=" && words[3] == "<=" &&
               parse_double(words[0], b.lower) &&
               parse_double(words[4], b.upper)) {
      b.name = words[2];
    } else {
      fail("unsupported bound");
    }
    bounds_.push_back(std::move(b));
  }

  MilpModel finish() {
    MilpModel model;
    model.title = title_;
    for (const auto& b : bounds_) {
      if (model.has_variable(b.name)) fail("variable bounded twice: " + b.name);
      model.add_variable({b.name, false, b.lower, b.upper});
    }
    auto id = [&](const std::string& name) {
      if (!model.has_variable(name)) model.add_variable({name, false, 0.0, kInfinity});
      return model.index(name);
    };
    auto convert = [&](const auto& terms) {
      MilpTerms out;
      for (const auto& [name, coef] : terms) out.emplace_back(id(name), coef);
      return merge_terms(out);
    };
    model.set_objective(convert(objective_));
    for (const auto& r : rows_) {
      model.add_row({r.name, "", convert(r.terms), r.relation, r.rhs});
    }
    for (const auto& name : binaries_) id(name);
    // Rebuild with the binary flags set.
    MilpModel out;
    out.title = model.title;
    for (auto var : model.variables()) {
      if (std::find(binaries_.begin(), binaries_.end(), var.name) !=
          binaries_.end()) {
        var.binary = true;
        if (var.lower < 0.0) var.lower = 0.0;
        if (var.upper > 1.0) var.upper = 1.0;
      }
      out.add_variable(var);
    }
    out.set_objective(model.objective());
    for (const auto& r : model.rows()) out.add_row(r);
    return out;
  }

  struct Bound {
    std::string name;
    double lower = 0.0;
    double upper = kInfinity;
  };
  struct ParsedRow {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    lp::Relation relation;
    double rhs;
  };

  std::string_view text_;
  std::size_t line_ = 0;
  Section section_ = Section::None;
  std::string title_;
  std::vector<std::pair<std::string, double>> objective_;
  std::vector<ParsedRow> rows_;
  std::vector<Bound> bounds_;
  std::vector<std::string> binaries_;
};

}  // namespace

MilpModel parse_lp_file(std::string_view text) { return LpParser(text).parse(); }

bool same_program(const MilpModel& a, const MilpModel& b) {
  if (a.variables() != b.variables()) return false;
  if (a.objective() != b.objective()) return false;
  if (a.rows().size() != b.rows().size()) return false;
  for (std::size_t i = 0; i < a.rows().size(); ++i) {
    const auto& x = a.rows()[i];
    const auto& y = b.rows()[i];
    if (x.name != y.name || x.terms != y.terms || x.relation != y.relation ||
        x.rhs != y.rhs) {
      return false;
    }
  }
  return true;
}

}  // namespace farekit
