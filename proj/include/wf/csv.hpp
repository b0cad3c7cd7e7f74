#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wf/detection.hpp"
#include "wf/synthetic.hpp"
#include "wf/types.hpp"

namespace wf {

/// File-level failure (missing, unreadable, malformed input file).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Frame stream, header "frame,t,x,y,z", one row per point. Frames must be
/// ordered; indices need not be contiguous.
std::vector<Frame> read_frames_csv(const std::string& path);
void write_frames_csv(const std::string& path, const std::vector<Frame>& frames);

/// Measurement summaries, header
/// "sensor,rain_mmh,fog_vis_m,d_p,n_bar,sigma,excluded"; fog_vis_m is
/// "inf" for clear. Rows sharing (sensor, rain, fog) are grouped into one
/// summary sorted by distance.
std::vector<MeasurementSummary> read_summary_csv(const std::string& path);
void write_summary_csv(const std::string& path,
                       const std::vector<MeasurementSummary>& summaries,
                       bool append = false);

/// Relative antenna gain, header "psi_deg,gain_db".
GainProfile read_gain_profile_csv(const std::string& path);

/// Generator ground truth, header
/// "sensor,rain_mmh,fog_vis_m,d_p,cluster_size,expected_recurring,realized_recurring_mean".
void write_sidecar_csv(const std::string& path, SensorKind sensor,
                       const WeatherCondition& condition,
                       const std::vector<SidecarRow>& rows);
std::vector<SidecarRow> read_sidecar_csv(const std::string& path);

/// Formats a double with '.' decimal separator, or "inf".
std::string format_number(double value, int precision = 10);
double parse_number(const std::string& text, const std::string& what);

}  // namespace wf
