#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qarea/harness.hpp"
#include "qarea/laplace.hpp"
#include "qarea/model.hpp"
#include "qarea/variational.hpp"

namespace qarea {

// 17-significant-digit decimal form (round-trips every double).
std::string format_double(double v);

// Same, but integral values keep a trailing ".0" so they read as floats.
std::string format_double_json(double v);

// CSV emitters. Column headers are a stable interface.
void write_grid_csv(std::ostream& os, const GridPath& grid,
                    const std::string& value_header = "value");
void write_trace_csv(std::ostream& os, const WorkloadTrace& trace);  // t,Q
void write_cycles_csv(std::ostream& os, const std::vector<CycleRecord>& cycles);
void write_path_csv(std::ostream& os, const MostLikelyPath& path,
                    const GridPath& workload);  // r,f_star,q
void write_transform_csv(std::ostream& os, const std::vector<TransformPoint>& points);
void write_regime_csv(std::ostream& os, const RegimeTable& table);

// Batch evaluation: header "u,T" appends the short-window tail value;
// header "T,M" appends the window rate value and branch.
void batch_evaluate_csv(std::istream& in, std::ostream& out, const QueueParams& params);

nlohmann::ordered_json report_to_json(const EstimatorReport& report);
nlohmann::ordered_json rate_to_json(const RateResult& rate);
nlohmann::ordered_json regime_table_to_json(const RegimeTable& table);
nlohmann::ordered_json scaling_to_json(const ScalingCheck& check);
nlohmann::ordered_json busy_suite_to_json(const BusySuiteReport& report);

SimConfig sim_config_from_json(const nlohmann::json& j);
Experiment experiment_from_json(const nlohmann::json& j);

// Serializer that prints every float to 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
nlohmann::json parse_json_file(const std::string& path);

}  // namespace qarea
