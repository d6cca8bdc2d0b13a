#pragma once

#include "fracnet/advection.hpp"
#include "fracnet/dfn.hpp"
#include "fracnet/graph.hpp"
#include "fracnet/lbm.hpp"
#include "fracnet/metrics.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fracnet::io {

namespace fs = std::filesystem;

/// Shortest round-trip representation of a double.
std::string format_double(double v);

/// Header `id,x1,y1,x2,y2,aperture,kind,hub_id`; coordinates with 6 decimals.
void write_network_csv(const FractureNetwork& net, const fs::path& path);
std::string network_csv(const FractureNetwork& net);
/// Rebuilds fractures from endpoints. Center, length and azimuth are derived
/// from the stored (clipped) segment; `config` supplies the domain.
FractureNetwork read_network_csv(const fs::path& path, const GeneratorConfig& config);

/// `# nodes=N` followed by `i,j` rows with i < j.
void write_edge_list(const FractureGraph& g, const fs::path& path);
FractureGraph read_edge_list(const fs::path& path);

/// degree_hist.csv, ck.csv, census.csv, distances.csv, summary.csv under `dir`.
void write_metrics(const MetricsReport& report, const fs::path& dir);

void write_steady_state(const std::vector<double>& u, const fs::path& path);
void write_histogram(const Histogram& h, const fs::path& path);

enum class PgmFormat { Ascii, Binary };
/// 0 = solid, 255 = fluid; first image row is y = 0.
void write_pgm(const lbm::Mask& mask, const fs::path& path, PgmFormat format = PgmFormat::Binary);
lbm::Mask read_pgm(const fs::path& path);

/// Row-major raster, first row y = 0.
void write_raster_csv(const std::vector<double>& values, int width, int height, const fs::path& path);
/// vx.csv, vy.csv, rho.csv and speed_log10.csv (nan where the speed is zero).
void write_flow_fields(const lbm::FlowField& flow, const fs::path& dir);

/// Appends one row; writes the header first when the file is new.
void append_csv_row(const fs::path& path, const std::vector<std::string>& header,
                    const std::vector<std::string>& row);

std::string read_text(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

} // namespace fracnet::io
