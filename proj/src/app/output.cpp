// output.cpp

#include "omspec/app/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "omspec/errors.hpp"

namespace omspec::app {

std::string format_number(double v) {
    if (v == 0.0) return "0";  // folds -0 as well
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double rounded(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("io_error", "cannot write '" + tmp.string() + "'");
        out << contents;
        if (!out) throw Error("io_error", "write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, target);
}

std::string spectrum_csv(const SpectrumResult& r) {
    std::string s = "t,delta,N\n";
    s.reserve(s.size() + r.times.size() * r.delta_grid.size() * 40);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const std::string t = format_number(r.times[i]);
        for (std::size_t j = 0; j < r.delta_grid.size(); ++j) {
            s += t;
            s += ',';
            s += format_number(r.delta_grid[j]);
            s += ',';
            s += format_number(r.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            s += '\n';
        }
    }
    return s;
}

std::string amplitudes_csv(const std::vector<double>& times, const CMatrix& amps, int m_max) {
    std::string s = "t,branch,m,re,im,abs2\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (Eigen::Index k = 0; k < amps.cols(); ++k) {
            const BasisIndex b = basis_index(static_cast<std::size_t>(k), m_max);
            const cplx a = amps(static_cast<Eigen::Index>(i), k);
            s += format_number(times[i]) + ',' + to_string(b.branch) + ',' + std::to_string(b.phonons) + ',' +
                 format_number(a.real()) + ',' + format_number(a.imag()) + ',' + format_number(std::norm(a)) + '\n';
        }
    }
    return s;
}

nlohmann::ordered_json peaks_json(const SpectrumResult& r, double fraction) {
    nlohmann::ordered_json j;
    j["prominence_fraction"] = fraction;
    j["delta_grid"] = {{"min", rounded(r.delta_grid.front())},
                       {"max", rounded(r.delta_grid.back())},
                       {"points", r.delta_grid.size()}};
    nlohmann::ordered_json per_time = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const std::vector<double> row = r.row(i);
        const PeakSet ps = find_peaks(r.delta_grid, row, fraction);
        nlohmann::ordered_json peaks = nlohmann::ordered_json::array();
        for (const Peak& p : ps.peaks) {
            peaks.push_back({{"delta", rounded(p.location)}, {"height", rounded(p.height)}, {"prominence", rounded(p.prominence)}});
        }
        per_time.push_back({{"t", rounded(r.times[i])}, {"threshold", rounded(ps.threshold)}, {"peaks", peaks}});
    }
    j["spectra"] = per_time;
    return j;
}

nlohmann::ordered_json dressed_json(const DressedSystem& d, const TransitionTable& table, const SystemParams& params) {
    nlohmann::ordered_json j;
    j["m_max"] = d.m_max;
    j["omega_g"] = d.omega_g;
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (double e : d.levels) levels.push_back(rounded(e));
    j["levels"] = levels;
    j["ground_levels"] = d.ground_levels;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const Transition& t : table.rows) {
        rows.push_back({{"upper", t.upper}, {"lower", t.lower}, {"frequency", rounded(t.frequency)}, {"weight", rounded(t.weight)}});
    }
    j["transitions"] = rows;

    if (params.delta_a == 0.0) {
        const ClosedFormVectors cf = closed_form_vectors(params);
        nlohmann::ordered_json states = nlohmann::ordered_json::array();
        for (const auto& s : cf.states) {
            nlohmann::ordered_json st;
            st["name"] = s.level.name;
            st["label"] = s.level.label;
            st["energy"] = rounded(s.level.energy);
            if (!cf.numerical_fallback) {
                st["a_printed"] = rounded(s.a_printed);
                st["a"] = rounded(s.a);
                st["b"] = rounded(s.b);
                st["c_printed"] = rounded(s.c_printed);
            }
            st["vector"] = {rounded(s.normalized(0)), rounded(s.normalized(1)), rounded(s.normalized(2)),
                            rounded(s.normalized(3))};
            states.push_back(st);
        }
        j["single_phonon_closed_form"] = {{"states", states},
                                          {"numerical_fallback", cf.numerical_fallback},
                                          {"diagnostics", cf.diagnostics}};
    }

    std::vector<int> cutoffs;
    for (int m = 1; m <= std::max(1, d.m_max); ++m) cutoffs.push_back(m);
    nlohmann::ordered_json conv = nlohmann::ordered_json::array();
    for (const ConvergenceRow& row : level_convergence(params, cutoffs)) {
        // the four levels bracketing zero detuning carry the Rabi doublet
        std::vector<double> lv = row.levels;
        std::sort(lv.begin(), lv.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        lv.resize(std::min<std::size_t>(4, lv.size()));
        std::sort(lv.begin(), lv.end());
        nlohmann::ordered_json l = nlohmann::ordered_json::array();
        for (double e : lv) l.push_back(rounded(e));
        conv.push_back({{"m_max", row.m_max}, {"levels_near_zero", l}});
    }
    j["convergence"] = conv;
    return j;
}

nlohmann::ordered_json ledger_json(const FluxLedger& led, int max_series_points) {
    const std::size_t n = led.times.size();
    const std::size_t last = n - 1;
    nlohmann::ordered_json j;
    j["t_max"] = rounded(led.times.back());
    j["steps"] = last;
    j["final"] = {{"norm_squared", rounded(led.norm_squared[last])},
                  {"detected_photon", rounded(led.detected_photon[last])},
                  {"spontaneous", rounded(led.spontaneous[last])},
                  {"phonon_loss", rounded(led.phonon_loss[last])},
                  {"thermal_feed", rounded(led.thermal_feed[last])}};
    j["truncation_leak"] = rounded(led.truncation_leak);
    j["balance_residual"] = rounded(led.balance_residual);

    const std::size_t stride = std::max<std::size_t>(1, (n + static_cast<std::size_t>(max_series_points) - 2) /
                                                            static_cast<std::size_t>(std::max(1, max_series_points - 1)));
    nlohmann::ordered_json series = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; i += stride) {
        series.push_back({rounded(led.times[i]), rounded(led.norm_squared[i]), rounded(led.detected_photon[i]),
                          rounded(led.spontaneous[i]), rounded(led.phonon_loss[i]), rounded(led.thermal_feed[i])});
    }
    if ((n - 1) % stride != 0) {
        series.push_back({rounded(led.times[last]), rounded(led.norm_squared[last]), rounded(led.detected_photon[last]),
                          rounded(led.spontaneous[last]), rounded(led.phonon_loss[last]), rounded(led.thermal_feed[last])});
    }
    j["series_columns"] = {"t", "norm_squared", "detected_photon", "spontaneous", "phonon_loss", "thermal_feed"};
    j["series"] = series;
    return j;
}

std::string spectrum_svg(const SpectrumResult& r) {
    constexpr double W = 800.0, H = 500.0, L = 70.0, R = 20.0, T = 20.0, B = 50.0;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#000000"};
    const double x0 = r.delta_grid.front();
    const double x1 = r.delta_grid.back();
    double ymax = r.values.size() ? r.values.maxCoeff() : 0.0;
    if (!(ymax > 0.0)) ymax = 1.0;
    auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double y) { return H - B - y / ymax * (H - T - B); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<g stroke=\"black\" stroke-width=\"1\">\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n";
    s << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int k = 0; k <= 8; ++k) {
        const double x = x0 + (x1 - x0) * k / 8.0;
        s << "<line x1=\"" << format_number(sx(x)) << "\" y1=\"" << H - B << "\" x2=\"" << format_number(sx(x))
          << "\" y2=\"" << H - B + 5 << "\" stroke=\"black\"/>";
        s << "<text x=\"" << format_number(sx(x)) << "\" y=\"" << H - B + 20 << "\">" << format_number(rounded(x))
          << "</text>\n";
    }
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\">Delta / omega_M</text>\n";
    s << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" transform=\"rotate(-90 15 " << (T + H - B) / 2
      << ")\">N(t; Delta)</text>\n";
    s << "<text x=\"" << L - 5 << "\" y=\"" << T + 5 << "\" text-anchor=\"end\">" << format_number(ymax) << "</text>\n";
    s << "</g>\n";
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        s << "<polyline fill=\"none\" stroke=\"" << colors[i % 6] << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t j = 0; j < r.delta_grid.size(); ++j) {
            if (j) s << ' ';
            s << format_number(sx(r.delta_grid[j])) << ','
              << format_number(sy(r.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
        }
        s << "\"/>\n";
        s << "<text x=\"" << W - R - 5 << "\" y=\"" << T + 15 * (i + 1) << "\" font-family=\"sans-serif\" font-size=\"12\" "
          << "text-anchor=\"end\" fill=\"" << colors[i % 6] << "\">t = " << format_number(r.times[i]) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace omspec::app
