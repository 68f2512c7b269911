#include "hgflow/io.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "hgflow/errors.hpp"

namespace hgflow {

namespace {

using nlohmann::json;

void append_g17(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

std::string format_trace_row(const TraceRow& row) {
    std::string line;
    line.reserve(320);
    const double cols[] = {row.t, row.dt, row.rho_min, row.rho_max, row.osc,
                           row.vol, row.area, row.a_nm2, row.af_gap, row.q,
                           row.k_max, row.kappa_min, row.grad_gamma_sq_max,
                           row.mink_res_0, row.mink_res_nm1};
    bool first = true;
    for (double c : cols) {
        if (!first) line += ',';
        first = false;
        append_g17(line, c);
    }
    return line;
}

std::string snapshot_to_json(const FlowState& state) {
    json j;
    j["t"] = state.t;
    j["n"] = state.field.grid->n;
    j["m"] = state.field.grid->m;
    j["psi"] = state.field.grid->psi;
    j["rho"] = state.field.rho;
    return j.dump();
}

RadialField snapshot_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("snapshot: malformed JSON: ") + err.what());
    }
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    RadialField field;
    field.grid = make_grid(n, m);
    field.rho = j.at("rho").get<std::vector<double>>();
    field.time = j.at("t").get<double>();
    if (static_cast<int>(field.rho.size()) != m) {
        throw ConfigError("snapshot: rho length does not match m");
    }
    return field;
}

RadialField load_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("snapshot: cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return snapshot_from_json(buf.str());
}

std::string report_to_json(const QuermassReport& rep, int m) {
    json j;
    j["n"] = rep.n;
    j["m"] = m;
    j["k_min"] = -1;
    j["A"] = rep.A; // A[i] = A_{i-1}, i.e. A_{-1}..A_{n-1}
    j["mink_res"] = rep.mink_res;
    j["af_gap"] = rep.af_gap;
    j["r_equiv"] = rep.r_equiv;
    return j.dump(2);
}

FileTraceSink::FileTraceSink(std::string trace_path, std::string snapshot_dir)
    : trace_path_(std::move(trace_path)), snapshot_dir_(std::move(snapshot_dir)) {
    trace_.open(trace_path_, std::ios::binary);
    if (!trace_) {
        throw ConfigError("trace sink: cannot open " + trace_path_ + " for writing");
    }
    trace_ << kTraceHeader << '\n';
}

void FileTraceSink::on_row(const TraceRow& row) {
    trace_ << format_trace_row(row) << '\n';
    if (!trace_) {
        throw ConfigError("trace sink: write failed for " + trace_path_);
    }
}

void FileTraceSink::on_snapshot(const FlowState& state) {
    namespace fs = std::filesystem;
    if (!snapshot_dir_ready_) {
        std::error_code ec;
        fs::create_directories(snapshot_dir_, ec);
        if (ec) {
            throw ConfigError("snapshot sink: cannot create directory " + snapshot_dir_
                              + ": " + ec.message());
        }
        snapshot_dir_ready_ = true;
    }
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%08ld.json", state.step_index);
    const std::string path = (fs::path(snapshot_dir_) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("snapshot sink: cannot open " + path + " for writing");
    out << snapshot_to_json(state) << '\n';
    if (!out) throw ConfigError("snapshot sink: write failed for " + path);
}

void FileTraceSink::close() {
    trace_.flush();
    trace_.close();
}

} // namespace hgflow
