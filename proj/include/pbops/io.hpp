#ifndef PBOPS_IO_HPP
#define PBOPS_IO_HPP

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbops/dense_operator.hpp"
#include "pbops/errors.hpp"
#include "pbops/experiment_series.hpp"
#include "pbops/power_series.hpp"
#include "pbops/rational.hpp"

namespace pbops {

using HeaderMap = std::map<std::string, std::string>;

/// Write-temp-then-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw parameter_error("cannot open for writing: " + tmp.string());
        out << body;
        if (!out) throw parameter_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// "# key=value" comment block; sorted keys so bodies are byte-reproducible.
inline std::string header_block(const HeaderMap& header) {
    std::string out;
    for (const auto& [k, v] : header) out += "# " + k + "=" + v + "\n";
    return out;
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Series: CSV rows "index,numerator,denominator" and JSON arrays of decimal
// strings "num/den".  Exact instances round-trip bit-exactly because the
// rational type keeps fractions canonically reduced.
// ---------------------------------------------------------------------------

inline std::string series_to_csv(const PowerSeries<Rational>& s, const HeaderMap& header = {}) {
    std::string out = header_block(header);
    out += "index,numerator,denominator\n";
    for (int k = 0; k <= s.order(); ++k) {
        out += std::to_string(k) + "," + numerator(s[k]).str() + ","
               + denominator(s[k]).str() + "\n";
    }
    return out;
}

inline std::string series_to_csv(const PowerSeries<double>& s, const HeaderMap& header = {}) {
    std::string out = header_block(header);
    out += "index,numerator,denominator\n";
    for (int k = 0; k <= s.order(); ++k)
        out += std::to_string(k) + "," + format_double(s[k]) + ",1\n";
    return out;
}

inline PowerSeries<Rational> series_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Rational> coeffs;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("index,", 0) == 0) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw parameter_error("series CSV: malformed row: " + line);
        const std::size_t idx = std::stoul(line.substr(0, c1));
        if (idx != coeffs.size())
            throw parameter_error("series CSV: non-contiguous index " + std::to_string(idx));
        coeffs.emplace_back(Integer(line.substr(c1 + 1, c2 - c1 - 1)),
                            Integer(line.substr(c2 + 1)));
    }
    if (coeffs.empty()) throw parameter_error("series CSV: no data rows");
    PowerSeries<Rational> s(static_cast<int>(coeffs.size()) - 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) s[static_cast<int>(k)] = coeffs[k];
    return s;
}

inline nlohmann::json series_to_json(const PowerSeries<Rational>& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k <= s.order(); ++k)
        arr.push_back(numerator(s[k]).str() + "/" + denominator(s[k]).str());
    return arr;
}

inline PowerSeries<Rational> series_from_json(const nlohmann::json& arr) {
    if (!arr.is_array() || arr.empty()) throw parameter_error("series JSON: expected array");
    PowerSeries<Rational> s(static_cast<int>(arr.size()) - 1);
    for (int k = 0; k < static_cast<int>(arr.size()); ++k) {
        const std::string v = arr[static_cast<std::size_t>(k)].get<std::string>();
        const auto slash = v.find('/');
        if (slash == std::string::npos)
            s[k] = Rational(Integer(v));
        else
            s[k] = Rational(Integer(v.substr(0, slash)), Integer(v.substr(slash + 1)));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Matrices: row-major CSV with "re+imi" cells (e.g. "1.5-0.25i").
// ---------------------------------------------------------------------------

inline std::string format_complex(const std::complex<double>& z) {
    std::string out = format_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
    out += format_double(z.imag()) + "i";
    return out;
}

inline std::complex<double> parse_complex(const std::string& cell) {
    if (cell.empty() || cell.back() != 'i')
        throw parameter_error("matrix CSV: cell must end in 'i': " + cell);
    const std::string body = cell.substr(0, cell.size() - 1);
    // split at the sign of the imaginary part: last '+' or '-' not preceded by e/E
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw parameter_error("matrix CSV: malformed cell: " + cell);
    return {std::stod(body.substr(0, split)), std::stod(body.substr(split))};
}

inline std::string matrix_to_csv(const Matrix& m, const HeaderMap& header = {}) {
    std::string out = header_block(header);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ",";
            out += format_complex(m(i, j));
        }
        out += "\n";
    }
    return out;
}

inline Matrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::complex<double>>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::complex<double>> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(parse_complex(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw parameter_error("matrix CSV: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parameter_error("matrix CSV: no data rows");
    Matrix m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

// ---------------------------------------------------------------------------
// Experiment series: CSV rows "index,value" (column names configurable).
// ---------------------------------------------------------------------------

inline std::string experiment_to_csv(const ExperimentSeries& s,
                                     const std::string& index_name = "index",
                                     const std::string& value_name = "value",
                                     const HeaderMap& header = {}) {
    std::string out = header_block(header);
    out += index_name + "," + value_name + "\n";
    for (const auto& [i, v] : s.points)
        out += format_double(i) + "," + format_double(v) + "\n";
    return out;
}

} // namespace pbops

#endif
