// output.hpp - deterministic text serialization of results

#pragma once

#include <string>

#include <json.hpp>

#include "omspec/dressed.hpp"
#include "omspec/peaks.hpp"
#include "omspec/propagator.hpp"
#include "omspec/spectrum.hpp"

namespace omspec::app {

/// 12 significant digits, '.' decimal separator, no locale involvement.
std::string format_number(double v);

/// The same value rounded to 12 significant digits, for JSON output.
double rounded(double v);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Header "t,delta,N", one row per (time, detuning), times outermost.
std::string spectrum_csv(const SpectrumResult& result);

/// Header "t,branch,m,re,im,abs2".
std::string amplitudes_csv(const std::vector<double>& times, const CMatrix& amps, int m_max);

nlohmann::ordered_json peaks_json(const SpectrumResult& result, double prominence_fraction);
nlohmann::ordered_json dressed_json(const DressedSystem& dressed, const TransitionTable& table,
                                    const SystemParams& params);
nlohmann::ordered_json ledger_json(const FluxLedger& ledger, int max_series_points = 401);

/// Self-contained SVG with one polyline per observation time.
std::string spectrum_svg(const SpectrumResult& result);

std::string dump(const nlohmann::ordered_json& j);

}  // namespace omspec::app
