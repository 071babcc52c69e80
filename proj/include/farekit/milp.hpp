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

// Mixed-integer model of zone tariff design, for export to an external
// solver. The model is never solved here; check_assignment evaluates it at
// the point induced by a given partition and price list.
//
// Variable names:
//   x_<v>_<z>    station v lies in zone z
//   b_<u>_<v>    edge {u,v} crosses a zone border (multiple counting)
//   bd_<d>_<z>   path of OD pair d touches zone z (single counting)
//   c_<d>_<k>    path of OD pair d traverses k zones
//   p_<k>        price for k zones
//   pi_<d>       fare paid by OD pair d
//   y_<d>        absolute deviation of OD pair d
//   f_<u>_<v>    flow on arc (u,v); f_0_<v> is flow from the source
//   s_<v>        station v is fed by the source
// Stations use their names when all names are alphanumeric (and none is
// "0"), otherwise s<index>. OD pairs, zones and levels are 1-based.

#ifndef FAREKIT_MILP_HPP_
#define FAREKIT_MILP_HPP_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "farekit/core.hpp"
#include "farekit/lp.hpp"
#include "farekit/zone_design.hpp"

namespace farekit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct MilpVariable {
  std::string name;
  bool binary = false;
  double lower = 0.0;
  double upper = kInfinity;

  friend bool operator==(const MilpVariable&, const MilpVariable&) = default;
};

using MilpTerms = std::vector<std::pair<std::size_t, double>>;

struct MilpRow {
  std::string name;
  std::string group;
  MilpTerms terms;
  lp::Relation relation = lp::Relation::LessEqual;
  double rhs = 0.0;

  friend bool operator==(const MilpRow&, const MilpRow&) = default;
};

// Row groups, in emission order.
inline constexpr const char* kGroupObjective = "objective";
inline constexpr const char* kGroupAssignment = "assignment";
inline constexpr const char* kGroupConnectivity = "connectivity";
inline constexpr const char* kGroupCounting = "counting";
inline constexpr const char* kGroupPrice = "price";
inline constexpr const char* kGroupMonotone = "monotone";
inline constexpr const char* kGroupStopover = "stopover";

class MilpModel {
 public:
  std::size_t add_variable(MilpVariable variable);
  void add_row(MilpRow row);

  const std::vector<MilpVariable>& variables() const { return variables_; }
  const std::vector<MilpRow>& rows() const { return rows_; }
  const MilpTerms& objective() const { return objective_; }
  void set_objective(MilpTerms terms) { objective_ = std::move(terms); }

  // Throws std::out_of_range for unknown names.
  std::size_t index(const std::string& name) const;
  bool has_variable(const std::string& name) const {
    return by_name_.contains(name);
  }
  std::size_t group_size(const std::string& group) const;

  // Data the model was built from; empty for parsed models.
  DesignConfig config;
  int K = 0;
  double r_bar = 0.0;
  std::vector<std::string> station_labels;
  std::string title;

 private:
  std::vector<MilpVariable> variables_;
  std::vector<MilpRow> rows_;
  MilpTerms objective_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

// Largest possible number of traversed zones.
int milp_zone_bound(std::span<const OdPair> demand, CountingMode mode,
                    int max_zones);

MilpModel build_milp(const Ptn& ptn, std::span<const OdPair> demand,
                     const DesignConfig& config);

// Row counts per group implied by the instance dimensions.
std::map<std::string, std::size_t> expected_group_sizes(
    std::size_t num_stations, std::size_t num_edges, std::size_t num_od,
    const DesignConfig& config, int K);

// Rows in the reduced multiple-counting stopover family for bound K.
std::size_t stopover_rows_multiple(int K);
// Rows in the full single-counting stopover family for bound K.
std::size_t stopover_rows_single(int K);

struct RowViolation {
  std::string row;
  std::string group;
  double activity = 0.0;
  double rhs = 0.0;
};

struct CheckReport {
  bool feasible = true;
  std::vector<RowViolation> violations;
  double objective = 0.0;
  std::vector<double> values;  // full assignment, by variable index
};

// Evaluates every row and bound of `model` at the assignment induced by
// the partition and price list, with a spanning-tree flow as connectivity
// witness. Prices beyond the list are extended (see the implementation).
// Throws InvalidInput if the partition uses more than N zones.
CheckReport check_assignment(const MilpModel& model, const Ptn& ptn,
                             std::span<const OdPair> demand,
                             const ZonePartition& partition,
                             const PriceList& prices);

// LP file text: `Minimize`, `Subject To` (one row per line), `Bounds` (one
// line per variable, in variable order), `Binaries`, `End`.
void write_lp_file(std::ostream& out, const MilpModel& model);
std::string to_lp_string(const MilpModel& model);

// Reads the subset of the LP format produced by write_lp_file. Variables are
// ordered as they appear in the Bounds section. Throws InvalidInput with a
// line number on malformed input.
MilpModel parse_lp_file(std::string_view text);

// Same variables, objective and rows (names, coefficients, relations, right
// hand sides); groups and build metadata are ignored.
bool same_program(const MilpModel& a, const MilpModel& b);

}  // namespace farekit

#endif  // FAREKIT_MILP_HPP_
