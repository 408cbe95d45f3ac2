#include "qarea/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qarea/asymptotics.hpp"

namespace qarea {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_double_json(double v) {
    if (!std::isfinite(v)) return "null";
    std::string s = format_double(v);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

void write_rows(std::ostream& os, const GridPath& grid, const std::string& header) {
    os << header << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_double(grid.time_at(i)) << ',' << format_double(grid.values()[i])
           << '\n';
    }
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridPath& grid,
                    const std::string& value_header) {
    write_rows(os, grid, "t," + value_header);
}

void write_trace_csv(std::ostream& os, const WorkloadTrace& trace) {
    write_rows(os, trace.path, "t,Q");
}

void write_cycles_csv(std::ostream& os, const std::vector<CycleRecord>& cycles) {
    os << "sigma,tau,H,xi\n";
    for (const auto& c : cycles) {
        os << format_double(c.sigma) << ',' << format_double(c.tau) << ','
           << format_double(c.area) << ',' << format_double(c.xi) << '\n';
    }
}

void write_path_csv(std::ostream& os, const MostLikelyPath& path,
                    const GridPath& workload) {
    if (workload.size() != path.grid.size()) {
        throw DomainError("driving path and workload grids differ in size");
    }
    os << "r,f_star,q\n";
    for (std::size_t i = 0; i < path.grid.size(); ++i) {
        os << format_double(path.grid.time_at(i)) << ','
           << format_double(path.grid.values()[i]) << ','
           << format_double(workload.values()[i]) << '\n';
    }
}

void write_transform_csv(std::ostream& os, const std::vector<TransformPoint>& points) {
    os << "gamma,value\n";
    for (const auto& p : points) {
        os << format_double(p.gamma) << ',' << format_double(p.value) << '\n';
    }
}

void write_regime_csv(std::ostream& os, const RegimeTable& table) {
    os << "u,T,n,hits,pi_hat,ci_low,ci_high,rate,target\n";
    for (const auto& row : table.rows) {
        os << format_double(row.u) << ',' << format_double(row.horizon) << ',' << row.n
           << ',' << row.report.hits << ',' << format_double(row.report.estimate) << ','
           << format_double(row.report.ci_low) << ',' << format_double(row.report.ci_high)
           << ',' << format_double(row.rate) << ',' << format_double(table.target_rate)
           << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        std::size_t b = 0, e = field.size();
        while (b < e && std::isspace(static_cast<unsigned char>(field[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(field[e - 1]))) --e;
        fields.push_back(field.substr(b, e - b));
    }
    return fields;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("malformed numeric field: '" + s + "'");
    }
    if (pos != s.size()) throw DomainError("malformed numeric field: '" + s + "'");
    return v;
}

}  // namespace

void batch_evaluate_csv(std::istream& in, std::ostream& out, const QueueParams& params) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("empty batch input");
    const auto header = split_csv_line(line);
    enum class Mode { ShortWindow, WindowRate } mode;
    if (header == std::vector<std::string>{"u", "T"}) {
        mode = Mode::ShortWindow;
        out << "u,T,value\n";
    } else if (header == std::vector<std::string>{"T", "M"}) {
        mode = Mode::WindowRate;
        out << "T,M,value,branch\n";
    } else {
        throw DomainError("batch header must be 'u,T' or 'T,M'");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw DomainError("batch rows need exactly two fields");
        const double a = parse_double(fields[0]);
        const double b = parse_double(fields[1]);
        if (mode == Mode::ShortWindow) {
            out << fields[0] << ',' << fields[1] << ','
                << format_double(short_window_tail_asymptotic(a, b, params)) << '\n';
        } else {
            const RateResult r = window_rate(a, b, params);
            out << fields[0] << ',' << fields[1] << ',' << format_double(r.value) << ','
                << branch_name(r.branch) << '\n';
        }
    }
}

nlohmann::ordered_json report_to_json(const EstimatorReport& report) {
    nlohmann::ordered_json j;
    j["estimate"] = report.estimate;
    j["std_error"] = report.std_error;
    j["ci_low"] = report.ci_low;
    j["ci_high"] = report.ci_high;
    j["confidence"] = report.confidence;
    j["n_replications"] = report.n_replications;
    j["hits"] = report.hits;
    j["zero_hits"] = report.zero_hits;
    j["seed"] = report.seed;
    j["wall_time_seconds"] = report.wall_time_seconds;
    return j;
}

nlohmann::ordered_json rate_to_json(const RateResult& rate) {
    nlohmann::ordered_json j;
    j["phi"] = rate.value;
    j["branch"] = branch_name(rate.branch);
    j["s_star"] = rate.s_star;
    j["a_star"] = rate.a_star;
    return j;
}

nlohmann::ordered_json regime_table_to_json(const RegimeTable& table) {
    nlohmann::ordered_json j;
    j["regime"] = regime_name(table.regime);
    j["M"] = table.M;
    j["target_rate"] = table.target_rate;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        r["u"] = row.u;
        r["T"] = row.horizon;
        r["n"] = row.n;
        r["rate"] = row.rate;
        r["report"] = report_to_json(row.report);
        j["rows"].push_back(std::move(r));
    }
    return j;
}

nlohmann::ordered_json scaling_to_json(const ScalingCheck& check) {
    nlohmann::ordered_json j;
    j["superposed"] = report_to_json(check.superposed);
    j["single"] = report_to_json(check.single);
    j["ci_overlap"] = check.ci_overlap;
    return j;
}

nlohmann::ordered_json busy_suite_to_json(const BusySuiteReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    j["censored"] = report.censored;
    j["all_pass"] = report.all_pass;
    j["targets"] = nlohmann::ordered_json::array();
    for (const auto& t : report.targets) {
        nlohmann::ordered_json e;
        e["label"] = t.label;
        e["estimate"] = t.estimate;
        e["reference"] = t.reference;
        e["ci_low"] = t.ci_low;
        e["ci_high"] = t.ci_high;
        e["tolerance"] =
            t.tol.kind == ToleranceSpec::Kind::RelErr ? "rel_err" : "ci_multiple";
        e["tolerance_value"] = t.tol.value;
        e["pass"] = t.pass;
        j["targets"].push_back(std::move(e));
    }
    return j;
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig config;
    config.h = j.value("h", config.h);
    config.horizon = j.value("horizon", config.horizon);
    config.seed = j.value("seed", config.seed);
    config.stream_index = j.value("stream_index", config.stream_index);
    config.use_exact_step = j.value("use_exact_step", config.use_exact_step);
    config.use_bridge_correction =
        j.value("use_bridge_correction", config.use_bridge_correction);
    return config;
}

Experiment experiment_from_json(const nlohmann::json& j) {
    if (!j.contains("c")) throw DomainError("experiment needs a drain rate 'c'");
    Experiment experiment{QueueParams(j.at("c").get<double>())};
    experiment.name = j.value("name", std::string("experiment"));
    experiment.regime = regime_from_name(j.value("regime", std::string("Intermediate")));
    experiment.M = j.value("M", experiment.M);
    if (j.contains("horizon")) {
        experiment.horizon.coeff = j.at("horizon").value("coeff", 1.0);
        experiment.horizon.power = j.at("horizon").value("power", 0.5);
    }
    if (j.contains("sim")) experiment.sim = sim_config_from_json(j.at("sim"));
    if (j.contains("u_grid")) {
        experiment.u_grid = j.at("u_grid").get<std::vector<double>>();
    }
    if (j.contains("n_per_point")) {
        experiment.n_per_point = j.at("n_per_point").get<std::vector<std::uint64_t>>();
    } else if (j.contains("n")) {
        experiment.n_per_point = {j.at("n").get<std::uint64_t>()};
    }
    return experiment;
}

namespace {

void dump_value(const nlohmann::ordered_json& j, std::string& out, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent > 0) out.append(static_cast<std::size_t>(indent) * d, ' ');
    };
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += indent > 0 ? "{\n" : "{";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += indent > 0 ? ",\n" : ",";
                first = false;
                pad(depth + 1);
                out += nlohmann::json(key).dump();
                out += indent > 0 ? ": " : ":";
                dump_value(value, out, indent, depth + 1);
            }
            if (indent > 0) out += '\n';
            pad(depth);
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += indent > 0 ? "[\n" : "[";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += indent > 0 ? ",\n" : ",";
                first = false;
                pad(depth + 1);
                dump_value(value, out, indent, depth + 1);
            }
            if (indent > 0) out += '\n';
            pad(depth);
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float:
            out += format_double_json(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
    std::string out;
    dump_value(j, out, indent, 0);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write file: " + path);
    out << content;
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace qarea
