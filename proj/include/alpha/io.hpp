#ifndef ALPHA_IO_HPP
#define ALPHA_IO_HPP

#include <string>
#include <vector>

#include "alpha/diagnostics.hpp"
#include "alpha/kernel.hpp"

namespace alpha {

// Single-writer atomic file write (write to a temporary, then rename).
void write_text_atomic(const std::string& path, const std::string& content);

// Snapshot files: <prefix>.csv holds `contour_id,node_index,x,y` rows at 17
// significant digits; <prefix>.json carries alpha, mode, t or tau, theta per
// contour, node counts, step and the config hash.
void write_snapshot(const std::string& prefix, const PatchSystem& sys, long step,
                    const std::string& config_hash);

struct SnapshotData {
    PatchSystem system;
    long step = 0;
    std::string config_hash;
};

SnapshotData read_snapshot(const std::string& prefix);

// Time-series CSV: step,t,tau,min_distance,max_curvature,area_1,area_2,n1,n2,dt
std::string timeseries_header();
std::string timeseries_row(const DiagnosticsRecord& r);
void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_timeseries(const std::string& path);

} // namespace alpha

#endif
