#ifndef EDLAB_IO_HPP
#define EDLAB_IO_HPP

#include <string>
#include <vector>

#include "edlab/decay.hpp"
#include "edlab/fp1d.hpp"
#include "edlab/grid.hpp"

namespace edlab {

/// Density CSV, schema v1: header "x,f", one row per cell (x = cell center,
/// f = cell-average density).
void write_density_csv(const std::string& path, const GridDensity1D& f);
GridDensity1D read_density_csv(const std::string& path);

/// Snapshot stream CSV, schema v1: header "t,x,f".
void write_snapshots_csv(const std::string& path, const std::vector<Snapshot>& snaps);

/// Trace CSV, schema v1: header "run_id,t,metric,alpha,value,err".
void write_trace_csv(const std::string& path, const DecayTrace& trace,
                     const std::string& run_id);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace edlab

#endif
