#pragma once

#include <fstream>
#include <string>

#include "hgflow/flow.hpp"
#include "hgflow/quermass.hpp"

namespace hgflow {

/// Byte-exact trace header; column order matches TraceRow.
inline constexpr const char* kTraceHeader =
    "t,dt,rho_min,rho_max,osc,vol,area,A_nm2,af_gap,Q,K_max,kappa_min,"
    "grad_gamma_sq_max,mink_res_0,mink_res_nm1";

/// One CSV line (no newline), every value at 17 significant digits.
std::string format_trace_row(const TraceRow& row);

/// {t, n, m, psi[], rho[]} with round-trip-exact doubles.
std::string snapshot_to_json(const FlowState& state);
RadialField snapshot_from_json(const std::string& text);
RadialField load_snapshot(const std::string& path);

std::string report_to_json(const QuermassReport& rep, int m);

/// File-backed sink: streams trace rows to trace_path and snapshots to
/// snapshot_dir/snapshot_<step>.json. I/O failures are reported with the
/// offending path.
class FileTraceSink : public TraceSink {
public:
    FileTraceSink(std::string trace_path, std::string snapshot_dir);
    void on_row(const TraceRow& row) override;
    void on_snapshot(const FlowState& state) override;
    void close();

private:
    std::string trace_path_;
    std::string snapshot_dir_;
    std::ofstream trace_;
    bool snapshot_dir_ready_ = false;
};

} // namespace hgflow
