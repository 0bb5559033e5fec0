// SPDX-License-Identifier: Apache-2.0
#include "ttdhp/scenario.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ttdhp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string &what) {
    throw std::invalid_argument("scenario: line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view value, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(std::string(value), &used);
        if (used != value.size())
            fail(line, "trailing characters after number");
        return v;
    } catch (const std::invalid_argument &) {
        fail(line, "expected a number, got '" + std::string(value) + "'");
    } catch (const std::out_of_range &) {
        fail(line, "number out of range");
    }
}

long long parse_int(std::string_view value, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, "expected an integer, got '" + std::string(value) + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view value, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(line, "expected an unsigned integer, got '" + std::string(value) + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view value, int line) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string_view item =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (item.empty())
            fail(line, "empty entry in list");
        out.push_back(parse_double(item, line));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace

ScenarioFile parse_scenario_text(std::string_view text) {
    ScenarioFile file;
    bool n_rf_given = false;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(line_no, "empty key");
        if (value.empty())
            fail(line_no, "empty value for key '" + key + "'");
        if (!seen.insert(key).second)
            fail(line_no, "duplicate key '" + key + "'");

        if (key == "fc_ghz")
            file.fc_ghz = parse_double(value, line_no);
        else if (key == "bandwidth_ghz")
            file.bandwidth_ghz = parse_double(value, line_no);
        else if (key == "subcarriers")
            file.subcarriers = static_cast<int>(parse_int(value, line_no));
        else if (key == "nt")
            file.nt = static_cast<int>(parse_int(value, line_no));
        else if (key == "m_ttd")
            file.m_ttd = static_cast<int>(parse_int(value, line_no));
        else if (key == "n_rf") {
            file.n_rf = static_cast<int>(parse_int(value, line_no));
            n_rf_given = true;
        } else if (key == "psi_c")
            file.psi_c = parse_double_list(value, line_no);
        else if (key == "tmax_ps")
            file.tmax_ps = parse_double(value, line_no);
        else if (key == "seed")
            file.seed = parse_u64(value, line_no);
        else
            fail(line_no, "unknown key '" + key + "'");
    }
    // A direction list without an explicit chain count implies the count.
    if (!n_rf_given)
        file.n_rf = static_cast<int>(file.psi_c.size());
    return file;
}

ScenarioFile parse_scenario_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

ScenarioParams to_params(const ScenarioFile &file) {
    const OfdmGrid grid(file.fc_ghz * 1e9, file.bandwidth_ghz * 1e9, file.subcarriers);
    const ArrayGeometry geom =
        ArrayGeometry::half_wavelength(file.nt, file.m_ttd, file.n_rf, grid.carrier_hz());
    if (static_cast<int>(file.psi_c.size()) != file.n_rf)
        throw std::invalid_argument("scenario: psi_c must list one direction per RF chain");
    return {grid, geom, file.psi_c, file.tmax_ps * 1e-12};
}

} // namespace ttdhp
