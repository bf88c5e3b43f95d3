#include "dlab/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace dlab {

std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        if (cells.size() != header.size()) throw std::invalid_argument("csv row width differs from the header");
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
        out += "\r\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

std::string sweep_csv(const SweepResult& r)
{
    std::vector<std::string> header;
    for (const auto& pt : r.points)
        for (const auto& [k, v] : pt.params)
            if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    const std::size_t n_params = header.size();
    header.insert(header.end(), {"measured", "bound", "ratio"});
    std::vector<std::vector<std::string>> rows;
    for (const auto& pt : r.points) {
        std::vector<std::string> row(n_params);
        for (std::size_t i = 0; i < n_params; ++i)
            for (const auto& [k, v] : pt.params)
                if (k == header[i]) row[i] = format_real(v);
        row.push_back(format_real(pt.measured));
        row.push_back(format_real(pt.bound));
        row.push_back(format_real(pt.ratio));
        rows.push_back(std::move(row));
    }
    return csv_text(header, rows);
}

Json sweep_summary(const SweepResult& r)
{
    Json j;
    j["name"] = r.name;
    j["abscissa"] = r.abscissa;
    j["points"] = r.points.size();
    j["slope"] = r.fit.slope;
    j["intercept"] = r.fit.intercept;
    j["r2"] = r.fit.r2;
    j["flags"] = r.flags;
    return j;
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string file_digest(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return hex64(fnv1a64(bytes));
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace dlab
